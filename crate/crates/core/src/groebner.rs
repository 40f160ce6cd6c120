//! Buchberger engine for submodules of graded free modules, with normal forms,
//! kernels, colon ideals, lifting and Hilbert series.

use std::cmp::Ordering;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{pot_cmp, FreeVec, Fp, Matrix, Mono, Poly, RingCtx, Term, MAX_VARS};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    pos: u32,
    sugar: i32,
}

fn mask(m: &Mono) -> u32 {
    let mut b = 0u32;
    for i in 0..MAX_VARS {
        if m.e[i] > 0 {
            b |= 1 << (2 * i);
            if m.e[i] > 1 {
                b |= 1 << (2 * i + 1);
            }
        }
    }
    b
}

/// Incremental Buchberger state over a free module with given position degrees.
#[derive(Clone)]
pub(crate) struct Engine {
    f: Fp,
    shifts: Vec<i32>,
    basis: Vec<FreeVec>,
    leads: Vec<(u32, Mono)>,
    masks: Vec<u32>,
    sugars: Vec<i32>,
    single: Vec<bool>,
    active: Vec<bool>,
    by_pos: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    inputs: Vec<(i32, FreeVec)>,
}

impl Engine {
    pub fn new(f: Fp, shifts: Vec<i32>) -> Engine {
        let n = shifts.len();
        Engine {
            f,
            shifts,
            basis: Vec::new(),
            leads: Vec::new(),
            masks: Vec::new(),
            sugars: Vec::new(),
            single: Vec::new(),
            active: Vec::new(),
            by_pos: vec![Vec::new(); n],
            pairs: Vec::new(),
            inputs: Vec::new(),
        }
    }

    /// Engine over `ctx` with `J·e_k` queued for every position in `ring_positions`.
    pub fn with_ring(ctx: &RingCtx, shifts: Vec<i32>, ring_positions: std::ops::Range<usize>) -> Engine {
        let mut e = Engine::new(ctx.field, shifts);
        for k in ring_positions {
            for g in &ctx.defining {
                e.add_input(g.to_vec_at(k as u32));
            }
        }
        e
    }

    pub fn add_input(&mut self, v: FreeVec) {
        if v.is_zero() {
            return;
        }
        let s = v.sugar(&self.shifts);
        self.inputs.push((s, v));
    }

    fn find_reducer(&self, pos: u32, m: &Mono) -> Option<usize> {
        let mk = mask(m);
        let mut best: Option<usize> = None;
        for &r in &self.by_pos[pos as usize] {
            if self.masks[r] & !mk != 0 {
                continue;
            }
            if self.leads[r].1.divides(m) {
                match best {
                    None => best = Some(r),
                    Some(b) if self.basis[r].terms.len() < self.basis[b].terms.len() => best = Some(r),
                    _ => {}
                }
            }
        }
        best
    }

    /// Full reduction against the current basis.
    pub fn reduce(&self, mut v: FreeVec) -> FreeVec {
        let f = self.f;
        let mut idx = 0;
        while idx < v.terms.len() {
            let t = v.terms[idx];
            match self.find_reducer(t.pos, &t.m) {
                Some(r) => {
                    let q = self.leads[r].1.quotient_of(&t.m);
                    v = v.add_scaled(f, &self.basis[r], &q, f.neg(t.c));
                }
                None => idx += 1,
            }
        }
        v
    }

    fn spoly(&self, p: &Pair) -> FreeVec {
        let f = self.f;
        let qi = self.leads[p.i].1.quotient_of(&p.lcm);
        let qj = self.leads[p.j].1.quotient_of(&p.lcm);
        self.basis[p.i].mul_term(f, &qi, 1).add_scaled(f, &self.basis[p.j], &qj, f.neg(1))
    }

    fn pair_key_cmp(a: &Pair, b: &Pair) -> Ordering {
        a.sugar
            .cmp(&b.sugar)
            .then_with(|| pot_cmp(b.pos, &b.lcm, a.pos, &a.lcm))
            .then_with(|| a.i.cmp(&b.i))
            .then_with(|| a.j.cmp(&b.j))
    }

    /// Add an already reduced nonzero element (made monic here) and update pairs.
    pub fn insert(&mut self, h: FreeVec, sugar: i32) -> usize {
        let h = h.make_monic(self.f);
        let lt = *h.lead().expect("insert of zero");
        let (hp, hm) = (lt.pos, lt.m);
        let hsingle = h.single_position();
        let idx = self.basis.len();
        let h_deg = hm.deg as i32 + self.shifts[hp as usize];

        let mut cands: Vec<Pair> = Vec::new();
        for &g in &self.by_pos[hp as usize] {
            if !self.active[g] {
                continue;
            }
            let l = hm.lcm(&self.leads[g].1);
            let sugar = (sugar + (l.deg - hm.deg) as i32).max(self.sugars[g] + (l.deg - self.leads[g].1.deg) as i32);
            cands.push(Pair { i: g, j: idx, lcm: l, pos: hp, sugar });
        }
        let coprime = |p: &Pair, leads: &Vec<(u32, Mono)>, single: &Vec<bool>| {
            hsingle && single[p.i] && leads[p.i].1.coprime(&hm)
        };
        // Gebauer–Möller: chain criterion among the new pairs.
        let mut kept: Vec<Pair> = Vec::new();
        for k in 0..cands.len() {
            let p = &cands[k];
            if coprime(p, &self.leads, &self.single) {
                kept.push(p.clone());
                continue;
            }
            let dominated = cands.iter().enumerate().any(|(k2, q)| {
                k2 != k && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || k2 < k)
            }) || kept.iter().any(|q| q.lcm.divides(&p.lcm) && q.lcm != p.lcm);
            if !dominated {
                kept.push(p.clone());
            }
        }
        let new_pairs: Vec<Pair> = kept.into_iter().filter(|p| !coprime(p, &self.leads, &self.single)).collect();
        // Filter old pairs.
        let leads = &self.leads;
        self.pairs.retain(|p| {
            if p.pos != hp || !hm.divides(&p.lcm) {
                return true;
            }
            let li = hm.lcm(&leads[p.i].1);
            let lj = hm.lcm(&leads[p.j].1);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(new_pairs);
        for &g in &self.by_pos[hp as usize] {
            if self.active[g] && hm.divides(&self.leads[g].1) {
                self.active[g] = false;
            }
        }
        let _ = h_deg;
        self.masks.push(mask(&hm));
        self.leads.push((hp, hm));
        self.sugars.push(sugar);
        self.single.push(hsingle);
        self.active.push(true);
        self.by_pos[hp as usize].push(idx);
        self.basis.push(h);
        idx
    }

    /// Process queued inputs and pairs with sugar up to `limit`.
    pub fn run(&mut self, limit: Option<i32>) {
        loop {
            let in_min = self.inputs.iter().enumerate().min_by_key(|(_, (s, _))| *s).map(|(k, (s, _))| (k, *s));
            let pair_min = self
                .pairs
                .iter()
                .enumerate()
                .min_by(|a, b| Self::pair_key_cmp(a.1, b.1))
                .map(|(k, p)| (k, p.sugar));
            let take_input = match (in_min, pair_min) {
                (None, None) => break,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (Some((_, a)), Some((_, b))) => a <= b,
            };
            if take_input {
                let (k, s) = in_min.unwrap();
                if limit.is_some_and(|l| s > l) {
                    break;
                }
                let (_, v) = self.inputs.swap_remove(k);
                let h = self.reduce(v);
                if !h.is_zero() {
                    self.insert(h, s);
                }
            } else {
                let (k, s) = pair_min.unwrap();
                if limit.is_some_and(|l| s > l) {
                    break;
                }
                let p = self.pairs.swap_remove(k);
                let h = self.reduce(self.spoly(&p));
                if !h.is_zero() {
                    self.insert(h, s);
                }
            }
        }
    }

    /// Reduced basis, monic, ascending by lead term.
    pub fn reduced_basis(&self) -> Vec<FreeVec> {
        let n = self.basis.len();
        let mut keep: Vec<usize> = Vec::new();
        for i in 0..n {
            let (pi, mi) = self.leads[i];
            let redundant = self.by_pos[pi as usize].iter().any(|&k| {
                k != i && self.leads[k].1.divides(&mi) && (self.leads[k].1 != mi || k < i)
            });
            if !redundant {
                keep.push(i);
            }
        }
        let mut sub = Engine::new(self.f, self.shifts.clone());
        for &i in &keep {
            let g = self.basis[i].clone();
            sub.masks.push(mask(&self.leads[i].1));
            sub.leads.push(self.leads[i]);
            sub.sugars.push(0);
            sub.single.push(true);
            sub.active.push(true);
            sub.by_pos[self.leads[i].0 as usize].push(sub.basis.len());
            sub.basis.push(g);
        }
        let mut out: Vec<FreeVec> = sub
            .basis
            .iter()
            .map(|g| {
                let lead = g.terms[0];
                let tail = sub.reduce(FreeVec { terms: g.terms[1..].to_vec() });
                let mut terms = vec![lead];
                terms.extend(tail.terms);
                FreeVec { terms }
            })
            .collect();
        out.sort_by(|a, b| {
            let (x, y) = (a.terms[0], b.terms[0]);
            pot_cmp(x.pos, &x.m, y.pos, &y.m)
        });
        out
    }

    pub fn basis(&self) -> &[FreeVec] {
        &self.basis
    }
}

/// A Gröbner basis of a submodule of a graded free module.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    pub field: Fp,
    pub gens: Vec<FreeVec>,
    pub shifts: Vec<i32>,
    pub reduced: bool,
}

/// Reduced Gröbner basis of the submodule generated by `gens` together with `J·e_i`.
pub fn buchberger(ctx: &RingCtx, shifts: &[i32], gens: &[FreeVec]) -> GroebnerBasis {
    let mut e = Engine::with_ring(ctx, shifts.to_vec(), 0..shifts.len());
    for g in gens {
        e.add_input(g.clone());
    }
    e.run(None);
    GroebnerBasis { field: ctx.field, gens: e.reduced_basis(), shifts: shifts.to_vec(), reduced: true }
}

/// Reduced Gröbner basis of an ideal of `ctx` (including the defining ideal).
pub fn ideal_gb(ctx: &RingCtx, gens: &[Poly]) -> Vec<Poly> {
    let vs: Vec<FreeVec> = gens.iter().map(|g| g.to_vec()).collect();
    buchberger(ctx, &[0], &vs).gens.iter().map(|v| v.component(0)).collect()
}

/// Remainder of `v` on division by `gb`.
pub fn normal_form(v: &FreeVec, gb: &GroebnerBasis) -> FreeVec {
    let mut e = Engine::new(gb.field, gb.shifts.clone());
    for g in &gb.gens {
        e.insert(g.clone(), 0);
    }
    e.reduce(v.clone())
}

/// Remainder of `v` on division by `gb` over the field of `ctx`.
pub fn normal_form_in(ctx: &RingCtx, v: &FreeVec, gb: &GroebnerBasis) -> FreeVec {
    let mut e = Engine::new(ctx.field, gb.shifts.clone());
    for g in &gb.gens {
        e.insert(g.clone(), 0);
    }
    e.reduce(v.clone())
}

/// True iff every S-vector of `gb` reduces to zero.
pub fn satisfies_buchberger_criterion(ctx: &RingCtx, gb: &GroebnerBasis) -> bool {
    let mut e = Engine::new(ctx.field, gb.shifts.clone());
    let mut idx = Vec::new();
    for g in &gb.gens {
        let t = g.terms[0];
        idx.push(e.basis.len());
        e.masks.push(mask(&t.m));
        e.leads.push((t.pos, t.m));
        e.sugars.push(0);
        e.single.push(true);
        e.active.push(true);
        e.by_pos[t.pos as usize].push(e.basis.len());
        e.basis.push(g.make_monic(ctx.field));
    }
    let n = e.basis.len();
    for i in 0..n {
        for j in i + 1..n {
            if e.leads[i].0 != e.leads[j].0 {
                continue;
            }
            let p = Pair { i, j, lcm: e.leads[i].1.lcm(&e.leads[j].1), pos: e.leads[i].0, sugar: 0 };
            if !e.reduce(e.spoly(&p)).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Indices of a minimal subset of `cands` generating `(base + cands + J·F) / (base + J·F)`.
pub fn minimal_subset(ctx: &RingCtx, row_degs: &[i32], base: &[FreeVec], cands: &[FreeVec]) -> Vec<usize> {
    let mut order: Vec<(i32, usize)> = cands
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (v.degree(row_degs).unwrap(), k))
        .collect();
    order.sort();
    let mut e = Engine::with_ring(ctx, row_degs.to_vec(), 0..row_degs.len());
    for b in base {
        e.add_input(b.clone());
    }
    let mut out = Vec::new();
    for (d, k) in order {
        e.run(Some(d));
        let r = e.reduce(cands[k].clone());
        if !r.is_zero() {
            out.push(k);
            e.insert(r, d);
        }
    }
    out.sort();
    out
}

/// Minimal homogeneous generators of the submodule spanned by `cands` modulo J.
pub fn minimal_generators(ctx: &RingCtx, row_degs: &[i32], cands: Vec<FreeVec>) -> Vec<FreeVec> {
    let keep = minimal_subset(ctx, row_degs, &[], &cands);
    keep.into_iter().map(|k| cands[k].clone()).collect()
}

/// Generators of `{c : A c ∈ im(rel) + J·F}`, minimal modulo J.
pub fn kernel(ctx: &RingCtx, a: &Matrix, rel: Option<&Matrix>) -> Matrix {
    Lifter::new(ctx, a, rel).kernel(ctx)
}

/// Syzygies of the columns of `a` over the ring of `ctx`.
pub fn syzygies(ctx: &RingCtx, a: &Matrix) -> Matrix {
    kernel(ctx, a, None)
}

/// Solves `A X = b` modulo `im(rel) + J` for many right-hand sides.
#[derive(Clone)]
pub struct Lifter {
    engine: Engine,
    rows: usize,
    ctx_field: Fp,
    col_degs: Vec<i32>,
}

impl Lifter {
    pub fn new(ctx: &RingCtx, a: &Matrix, rel: Option<&Matrix>) -> Lifter {
        let r = a.nrows();
        let c = a.ncols();
        let mut shifts = a.row_degs.clone();
        shifts.extend(a.col_degs.iter().cloned());
        let mut e = Engine::with_ring(ctx, shifts, 0..r + c);
        for (j, col) in a.cols.iter().enumerate() {
            let mut v = ctx.reduce(col);
            v.terms.push(Term { pos: (r + j) as u32, m: Mono::one(), c: 1 });
            e.add_input(v);
        }
        if let Some(rel) = rel {
            for col in &rel.cols {
                e.add_input(col.clone());
            }
        }
        e.run(None);
        Lifter { engine: e, rows: r, ctx_field: ctx.field, col_degs: a.col_degs.clone() }
    }

    /// Coefficients `x` with `A x ≡ b`, or None if `b` is not in the span.
    pub fn lift(&self, b: &FreeVec) -> Option<FreeVec> {
        let red = self.engine.reduce(b.clone());
        let (lo, hi) = red.split_at(self.rows as u32);
        if !lo.is_zero() {
            return None;
        }
        Some(hi.neg(self.ctx_field))
    }

    /// True iff `b` lies in `im A + im rel + J`.
    pub fn contains(&self, b: &FreeVec) -> bool {
        let red = self.engine.reduce(b.clone());
        red.terms.first().map_or(true, |t| t.pos as usize >= self.rows)
    }

    pub fn source_degs(&self) -> &[i32] {
        &self.col_degs
    }

    /// Minimal generators of the kernel of `A` modulo `rel` and J.
    pub fn kernel(&self, ctx: &RingCtx) -> Matrix {
        let r = self.rows as u32;
        let cands: Vec<FreeVec> = self
            .engine
            .basis()
            .iter()
            .filter(|v| v.terms[0].pos >= r)
            .map(|v| ctx.reduce(&v.split_at(r).1))
            .filter(|v| !v.is_zero())
            .collect();
        let gens = minimal_generators(ctx, &self.col_degs, cands);
        Matrix::from_cols(self.col_degs.clone(), gens)
    }
}

/// Solve `A X = B` modulo J.
pub fn lift_through(ctx: &RingCtx, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let l = Lifter::new(ctx, a, None);
    let mut cols = Vec::with_capacity(b.ncols());
    for (j, col) in b.cols.iter().enumerate() {
        match l.lift(col) {
            Some(x) => cols.push(ctx.reduce(&x)),
            None => return Err(Error::NoLift(j)),
        }
    }
    Ok(Matrix::new(a.col_degs.clone(), cols, b.col_degs.clone()))
}

/// `(I : g)` for a single polynomial.
pub fn colon_poly(ctx: &RingCtx, i: &[Poly], g: &Poly) -> Vec<Poly> {
    let gd = g.degree().unwrap_or(0) as i32;
    if g.is_zero() {
        return ideal_gb(ctx, &[Poly::constant(1)]);
    }
    let a = Matrix::new(vec![0], vec![g.to_vec()], vec![gd]);
    let rel = Matrix::from_cols(vec![0], i.iter().filter(|p| !p.is_zero()).map(|p| p.to_vec()).collect());
    let k = kernel(ctx, &a, Some(&rel));
    let gens: Vec<Poly> = k.cols.iter().map(|c| c.component(0)).collect();
    ideal_gb(ctx, &gens)
}

/// Intersection of ideals through a module kernel.
pub fn intersect(ctx: &RingCtx, ideals: &[Vec<Poly>]) -> Vec<Poly> {
    if ideals.is_empty() {
        return ideal_gb(ctx, &[Poly::constant(1)]);
    }
    let n = ideals.len();
    let col = FreeVec { terms: (0..n).map(|k| Term { pos: k as u32, m: Mono::one(), c: 1 }).collect() };
    let a = Matrix::new(vec![0; n], vec![col], vec![0]);
    let mut rels = Vec::new();
    for (k, id) in ideals.iter().enumerate() {
        for p in id {
            if !p.is_zero() {
                rels.push(p.to_vec_at(k as u32));
            }
        }
    }
    let rel = Matrix::from_cols(vec![0; n], rels);
    let k = kernel(ctx, &a, Some(&rel));
    let gens: Vec<Poly> = k.cols.iter().map(|c| c.component(0)).collect();
    ideal_gb(ctx, &gens)
}

/// `(I : J)` as a reduced Gröbner basis.
pub fn colon(ctx: &RingCtx, i: &[Poly], j: &[Poly]) -> Vec<Poly> {
    let parts: Vec<Vec<Poly>> = j.iter().filter(|g| !g.is_zero()).map(|g| colon_poly(ctx, i, g)).collect();
    intersect(ctx, &parts)
}

/// Ideal membership through normal forms.
pub fn ideal_contains(ctx: &RingCtx, gb: &[Poly], f: &Poly) -> bool {
    let g = GroebnerBasis { field: ctx.field, gens: gb.iter().map(|p| p.to_vec()).collect(), shifts: vec![0], reduced: true };
    normal_form_in(ctx, &f.to_vec(), &g).is_zero()
}

/// Hilbert series `Σ num[k] t^(offset+k) / (1-t)^nvars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub num: Vec<i64>,
    pub offset: i32,
    pub nvars: usize,
}

fn trim(num: &mut Vec<i64>, offset: &mut i32) {
    while num.last() == Some(&0) {
        num.pop();
    }
    let lead = num.iter().take_while(|&&c| c == 0).count();
    if lead == num.len() {
        num.clear();
        *offset = 0;
    } else if lead > 0 {
        num.drain(..lead);
        *offset += lead as i32;
    }
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

impl HilbertSeries {
    pub fn zero(nvars: usize) -> HilbertSeries {
        HilbertSeries { num: Vec::new(), offset: 0, nvars }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&c| c == 0)
    }

    pub fn add(&self, o: &HilbertSeries, sign: i64) -> HilbertSeries {
        assert_eq!(self.nvars, o.nvars);
        if self.is_zero() {
            return HilbertSeries { num: o.num.iter().map(|c| c * sign).collect(), offset: o.offset, nvars: o.nvars };
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(o.offset);
        let hi = (self.offset + self.num.len() as i32).max(o.offset + o.num.len() as i32);
        let mut num = vec![0i64; (hi - lo) as usize];
        for (k, c) in self.num.iter().enumerate() {
            num[(self.offset - lo) as usize + k] += c;
        }
        for (k, c) in o.num.iter().enumerate() {
            num[(o.offset - lo) as usize + k] += c * sign;
        }
        let mut offset = lo;
        trim(&mut num, &mut offset);
        HilbertSeries { num, offset, nvars: self.nvars }
    }

    pub fn shifted(&self, by: i32) -> HilbertSeries {
        HilbertSeries { num: self.num.clone(), offset: self.offset + by, nvars: self.nvars }
    }

    /// Numerator after cancelling powers of (1-t), with remaining exponent.
    pub fn reduced(&self) -> (Vec<i64>, i32, usize) {
        let mut num = self.num.clone();
        let mut d = self.nvars;
        if num.is_empty() {
            return (num, 0, 0);
        }
        while d > 0 && num.iter().sum::<i64>() == 0 {
            // divide by (1 - t)
            let mut q = vec![0i64; num.len() - 1];
            let mut acc = 0i64;
            for k in 0..num.len() - 1 {
                acc += num[k];
                q[k] = acc;
            }
            num = q;
            d -= 1;
        }
        (num, self.offset, d)
    }

    /// Krull dimension; None for the zero module.
    pub fn dim(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        Some(self.reduced().2)
    }

    pub fn multiplicity(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        self.reduced().0.iter().sum()
    }

    pub fn hf(&self, d: i32) -> i64 {
        let m = self.nvars as i64;
        let mut s = 0i64;
        for (k, c) in self.num.iter().enumerate() {
            let e = (d - self.offset - k as i32) as i64;
            if e < 0 {
                continue;
            }
            if m == 0 {
                if e == 0 {
                    s += c;
                }
            } else {
                s += c * binom(e + m - 1, m - 1);
            }
        }
        s
    }

    pub fn table(&self, window: RangeInclusive<i32>) -> Vec<HfEntry> {
        window.map(|d| HfEntry { degree: d, value: self.hf(d) }).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HfEntry {
    pub degree: i32,
    pub value: i64,
}

fn minimalize(mut gens: Vec<Mono>) -> Vec<Mono> {
    gens.sort_by_key(|m| m.deg);
    let mut out: Vec<Mono> = Vec::new();
    for g in gens {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

fn poly_add_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, c) in b.iter().enumerate() {
        a[k + shift] += c;
    }
}

/// Numerator of the Hilbert series of `S / (gens)` for a monomial ideal.
pub fn monomial_numerator(gens: &[Mono]) -> Vec<i64> {
    let gens = minimalize(gens.to_vec());
    if gens.is_empty() {
        return vec![1];
    }
    let pure = gens.iter().all(|g| g.e.iter().filter(|&&x| x > 0).count() <= 1);
    if pure {
        let mut r = vec![1i64];
        for g in &gens {
            let mut f = vec![0i64; g.deg as usize + 1];
            f[0] = 1;
            f[g.deg as usize] -= 1;
            r = poly_mul(&r, &f);
        }
        return r;
    }
    let mut counts = [0usize; MAX_VARS];
    for g in &gens {
        if g.e.iter().filter(|&&x| x > 0).count() > 1 {
            for i in 0..MAX_VARS {
                if g.e[i] > 0 {
                    counts[i] += 1;
                }
            }
        }
    }
    let v = (0..MAX_VARS).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let x = Mono::var(v);
    let mut plus: Vec<Mono> = gens.iter().filter(|g| g.e[v] == 0).cloned().collect();
    plus.push(x);
    let colon: Vec<Mono> = gens
        .iter()
        .map(|g| {
            let mut h = *g;
            if h.e[v] > 0 {
                h.e[v] -= 1;
                h.deg -= 1;
            }
            h
        })
        .collect();
    let mut r = monomial_numerator(&plus);
    let c = monomial_numerator(&colon);
    poly_add_shifted(&mut r, &c, 1);
    r
}

/// Hilbert series of `F / M` where `lead` lists the lead terms of a Gröbner basis of M.
pub fn series_from_leads(nvars: usize, shifts: &[i32], leads: &[(u32, Mono)]) -> HilbertSeries {
    let mut total = HilbertSeries::zero(nvars);
    for (pos, &sh) in shifts.iter().enumerate() {
        let ms: Vec<Mono> = leads.iter().filter(|l| l.0 as usize == pos).map(|l| l.1).collect();
        let mut num = monomial_numerator(&ms);
        let mut offset = sh;
        trim(&mut num, &mut offset);
        total = total.add(&HilbertSeries { num, offset, nvars }, 1);
    }
    total
}

/// Hilbert series of `F / (im gens + J F)`.
pub fn quotient_series(ctx: &RingCtx, shifts: &[i32], gens: &[FreeVec]) -> HilbertSeries {
    let gb = buchberger(ctx, shifts, gens);
    let leads: Vec<(u32, Mono)> = gb.gens.iter().map(|g| (g.terms[0].pos, g.terms[0].m)).collect();
    series_from_leads(ctx.nvars(), shifts, &leads)
}

/// Hilbert data of a quotient by a Gröbner basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub series: HilbertSeries,
    pub dim: Option<usize>,
    pub degree: i64,
    pub values: Vec<HfEntry>,
}

pub fn hilbert(ctx: &RingCtx, gb: &GroebnerBasis, window: RangeInclusive<i32>) -> HilbertData {
    let leads: Vec<(u32, Mono)> = gb.gens.iter().map(|g| (g.terms[0].pos, g.terms[0].m)).collect();
    let series = series_from_leads(ctx.nvars(), &gb.shifts, &leads);
    HilbertData {
        dim: series.dim(),
        degree: series.multiplicity(),
        values: series.table(window),
        series,
    }
}

//! Polynomials over prime fields, free-module vectors and ring contexts.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 8;
pub const DEFAULT_CHAR: u32 = 32003;

/// Arithmetic in F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    pub p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Fp> {
        if !is_prime(p) || p >= (1u32 << 31) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(self.p as i64) as u32
    }

    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in (-p/2, p/2].
    pub fn signed(self, a: u32) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exponent vector with cached total degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono {
    pub e: [u16; MAX_VARS],
    pub deg: u32,
}

impl Mono {
    pub fn one() -> Mono {
        Mono::default()
    }

    pub fn var(i: usize) -> Mono {
        let mut m = Mono::default();
        m.e[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Result<Mono> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exps.len()));
        }
        let mut m = Mono::default();
        for (i, &x) in exps.iter().enumerate() {
            if x > u16::MAX as u32 / 2 {
                return Err(Error::ExponentOverflow);
            }
            m.e[i] = x as u16;
            m.deg += x;
        }
        Ok(m)
    }

    #[inline]
    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.e[i] = r.e[i].checked_add(o.e[i]).expect("exponent overflow");
        }
        r.deg += o.deg;
        r
    }

    #[inline]
    pub fn divides(&self, o: &Mono) -> bool {
        if self.deg > o.deg {
            return false;
        }
        (0..MAX_VARS).all(|i| self.e[i] <= o.e[i])
    }

    /// `o / self`, assuming `self` divides `o`.
    #[inline]
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        let mut r = *o;
        for i in 0..MAX_VARS {
            r.e[i] -= self.e[i];
        }
        r.deg -= self.deg;
        r
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        let mut r = Mono::default();
        for i in 0..MAX_VARS {
            r.e[i] = self.e[i].max(o.e[i]);
            r.deg += r.e[i] as u32;
        }
        r
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let mut r = Mono::default();
        for i in 0..MAX_VARS {
            r.e[i] = self.e[i].min(o.e[i]);
            r.deg += r.e[i] as u32;
        }
        r
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] == 0 || o.e[i] == 0)
    }

    /// Graded reverse lexicographic comparison with x_0 > x_1 > ...
    #[inline]
    pub fn grevlex(&self, o: &Mono) -> Ordering {
        match self.deg.cmp(&o.deg) {
            Ordering::Equal => {}
            c => return c,
        }
        for i in (0..MAX_VARS).rev() {
            if self.e[i] != o.e[i] {
                return o.e[i].cmp(&self.e[i]);
            }
        }
        Ordering::Equal
    }

    pub fn exps(&self, n: usize) -> Vec<u32> {
        self.e[..n].iter().map(|&x| x as u32).collect()
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.e)
    }
}

/// Compare two exponent vectors in grevlex.
pub fn compare_monomials(a: &[u32], b: &[u32]) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(Mono::from_exps(a)?.grevlex(&Mono::from_exps(b)?))
}

/// Sparse polynomial, terms strictly descending in grevlex.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Poly {
    pub terms: Vec<(Mono, u32)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: u32) -> Poly {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(Mono::one(), c)] }
        }
    }

    pub fn monomial(m: Mono, c: u32) -> Poly {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(i: usize) -> Poly {
        Poly::monomial(Mono::var(i), 1)
    }

    /// Build from unsorted terms, combining duplicates.
    pub fn from_terms(f: Fp, mut terms: Vec<(Mono, u32)>) -> Poly {
        terms.sort_by(|a, b| b.0.grevlex(&a.0));
        let mut out: Vec<(Mono, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = f.add(last.1, c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|t| t.1 != 0);
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Mono, u32)> {
        self.terms.first()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.deg == w[1].0.deg)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.deg).max()
    }

    pub fn uses_vars_below(&self, n: usize) -> bool {
        self.terms.iter().all(|(m, _)| m.e[n..].iter().all(|&x| x == 0))
    }

    pub fn add(&self, f: Fp, o: &Poly) -> Poly {
        self.to_vec().add(f, &o.to_vec()).component(0)
    }

    pub fn sub(&self, f: Fp, o: &Poly) -> Poly {
        self.to_vec().sub(f, &o.to_vec()).component(0)
    }

    pub fn scale(&self, f: Fp, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect() }
    }

    pub fn mul_term(&self, f: Fp, m: &Mono, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|&(t, a)| (t.mul(m), f.mul(a, c))).collect() }
    }

    pub fn mul(&self, f: Fp, o: &Poly) -> Poly {
        let mut acc = FreeVec::zero();
        for (m, c) in &o.terms {
            acc = acc.add(f, &self.to_vec().mul_term(f, m, *c));
        }
        acc.component(0)
    }

    pub fn to_vec(&self) -> FreeVec {
        self.to_vec_at(0)
    }

    pub fn to_vec_at(&self, pos: u32) -> FreeVec {
        FreeVec { terms: self.terms.iter().map(|&(m, c)| Term { pos, m, c }).collect() }
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.deg == 0
    }

    pub fn fmt_with(&self, f: Fp, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let sc = f.signed(*c);
            let mag = sc.unsigned_abs();
            if sc < 0 {
                s.push('-');
            } else if k > 0 {
                s.push('+');
            }
            let mut parts: Vec<String> = Vec::new();
            if mag != 1 || m.deg == 0 {
                parts.push(mag.to_string());
            }
            for (i, name) in names.iter().enumerate() {
                match m.e[i] {
                    0 => {}
                    1 => parts.push(name.clone()),
                    e => parts.push(format!("{name}^{e}")),
                }
            }
            s.push_str(&parts.join("*"));
        }
        s
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub pos: u32,
    pub m: Mono,
    pub c: u32,
}

/// Position-over-term comparison; lower positions dominate.
#[inline]
pub fn pot_cmp(a_pos: u32, a: &Mono, b_pos: u32, b: &Mono) -> Ordering {
    match b_pos.cmp(&a_pos) {
        Ordering::Equal => a.grevlex(b),
        c => c,
    }
}

/// Element of a free module, terms strictly descending in POT order.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct FreeVec {
    pub terms: Vec<Term>,
}

impl FreeVec {
    pub fn zero() -> FreeVec {
        FreeVec { terms: Vec::new() }
    }

    pub fn unit(pos: u32) -> FreeVec {
        FreeVec { terms: vec![Term { pos, m: Mono::one(), c: 1 }] }
    }

    pub fn from_terms(f: Fp, mut terms: Vec<Term>) -> FreeVec {
        terms.sort_by(|a, b| pot_cmp(b.pos, &b.m, a.pos, &a.m));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.pos == t.pos && last.m == t.m {
                    last.c = f.add(last.c, t.c);
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| t.c != 0);
        FreeVec { terms: out }
    }

    pub fn from_components(comps: &[Poly]) -> FreeVec {
        let mut terms = Vec::new();
        for (i, p) in comps.iter().enumerate() {
            terms.extend(p.terms.iter().map(|&(m, c)| Term { pos: i as u32, m, c }));
        }
        FreeVec { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn component(&self, pos: u32) -> Poly {
        Poly {
            terms: self.terms.iter().filter(|t| t.pos == pos).map(|t| (t.m, t.c)).collect(),
        }
    }

    pub fn components(&self, n: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); n];
        for t in &self.terms {
            out[t.pos as usize].terms.push((t.m, t.c));
        }
        out
    }

    pub fn max_pos(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.pos).max()
    }

    pub fn single_position(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(l) => self.terms.iter().all(|t| t.pos == l.pos),
        }
    }

    /// Degree of the leading term given position shifts.
    pub fn degree(&self, shifts: &[i32]) -> Option<i32> {
        self.terms.first().map(|t| t.m.deg as i32 + shifts[t.pos as usize])
    }

    pub fn is_homogeneous(&self, shifts: &[i32]) -> bool {
        match self.degree(shifts) {
            None => true,
            Some(d) => self.terms.iter().all(|t| t.m.deg as i32 + shifts[t.pos as usize] == d),
        }
    }

    /// Sugar degree: maximum term degree.
    pub fn sugar(&self, shifts: &[i32]) -> i32 {
        self.terms.iter().map(|t| t.m.deg as i32 + shifts[t.pos as usize]).max().unwrap_or(0)
    }

    pub fn scale(&self, f: Fp, c: u32) -> FreeVec {
        if c == 0 {
            return FreeVec::zero();
        }
        FreeVec { terms: self.terms.iter().map(|t| Term { c: f.mul(t.c, c), ..*t }).collect() }
    }

    pub fn neg(&self, f: Fp) -> FreeVec {
        FreeVec { terms: self.terms.iter().map(|t| Term { c: f.neg(t.c), ..*t }).collect() }
    }

    pub fn make_monic(&self, f: Fp) -> FreeVec {
        match self.lead() {
            None => FreeVec::zero(),
            Some(t) if t.c == 1 => self.clone(),
            Some(t) => self.scale(f, f.inv(t.c)),
        }
    }

    pub fn mul_term(&self, f: Fp, m: &Mono, c: u32) -> FreeVec {
        if c == 0 {
            return FreeVec::zero();
        }
        FreeVec {
            terms: self
                .terms
                .iter()
                .map(|t| Term { pos: t.pos, m: t.m.mul(m), c: f.mul(t.c, c) })
                .collect(),
        }
    }

    pub fn mul_poly(&self, f: Fp, p: &Poly) -> FreeVec {
        let mut acc = FreeVec::zero();
        for (m, c) in &p.terms {
            acc = acc.add(f, &self.mul_term(f, m, *c));
        }
        acc
    }

    pub fn shift_pos(&self, by: i64) -> FreeVec {
        FreeVec {
            terms: self.terms.iter().map(|t| Term { pos: (t.pos as i64 + by) as u32, ..*t }).collect(),
        }
    }

    pub fn map_pos(&self, f: Fp, g: impl Fn(u32) -> u32) -> FreeVec {
        FreeVec::from_terms(f, self.terms.iter().map(|t| Term { pos: g(t.pos), ..*t }).collect())
    }

    /// Split into the part with positions below `r` and the part at or above it (shifted down by r).
    pub fn split_at(&self, r: u32) -> (FreeVec, FreeVec) {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for t in &self.terms {
            if t.pos < r {
                lo.push(*t);
            } else {
                hi.push(Term { pos: t.pos - r, ..*t });
            }
        }
        (FreeVec { terms: lo }, FreeVec { terms: hi })
    }

    /// `self + c * m * o`.
    pub fn add_scaled(&self, f: Fp, o: &FreeVec, m: &Mono, c: u32) -> FreeVec {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &o.terms;
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.extend_from_slice(&a[i..]);
                break;
            }
            let bt = Term { pos: b[j].pos, m: b[j].m.mul(m), c: f.mul(b[j].c, c) };
            if i == a.len() {
                out.push(bt);
                j += 1;
                continue;
            }
            match pot_cmp(a[i].pos, &a[i].m, bt.pos, &bt.m) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(bt);
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(a[i].c, bt.c);
                    if s != 0 {
                        out.push(Term { c: s, ..a[i] });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        FreeVec { terms: out }
    }

    pub fn add(&self, f: Fp, o: &FreeVec) -> FreeVec {
        self.add_scaled(f, o, &Mono::one(), 1)
    }

    pub fn sub(&self, f: Fp, o: &FreeVec) -> FreeVec {
        self.add_scaled(f, o, &Mono::one(), f.neg(1))
    }
}

/// Columns of homogeneous free-module vectors with row (target) and column (source) degrees.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Matrix {
    pub row_degs: Vec<i32>,
    pub cols: Vec<FreeVec>,
    pub col_degs: Vec<i32>,
}

impl Matrix {
    pub fn new(row_degs: Vec<i32>, cols: Vec<FreeVec>, col_degs: Vec<i32>) -> Matrix {
        debug_assert_eq!(cols.len(), col_degs.len());
        Matrix { row_degs, cols, col_degs }
    }

    /// Columns with degrees inferred from lead terms; zero columns get `default_deg`.
    pub fn from_cols(row_degs: Vec<i32>, cols: Vec<FreeVec>) -> Matrix {
        let col_degs = cols.iter().map(|c| c.degree(&row_degs).unwrap_or(0)).collect();
        Matrix { row_degs, cols, col_degs }
    }

    pub fn zero(row_degs: Vec<i32>, col_degs: Vec<i32>) -> Matrix {
        let cols = vec![FreeVec::zero(); col_degs.len()];
        Matrix { row_degs, cols, col_degs }
    }

    pub fn identity(degs: &[i32]) -> Matrix {
        Matrix {
            row_degs: degs.to_vec(),
            cols: (0..degs.len()).map(|i| FreeVec::unit(i as u32)).collect(),
            col_degs: degs.to_vec(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.row_degs.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Poly {
        self.cols[j].component(i as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// `self * other`; other's rows index self's columns.
    pub fn mul(&self, f: Fp, other: &Matrix) -> Matrix {
        let cols = other.cols.iter().map(|c| self.apply(f, c)).collect();
        Matrix { row_degs: self.row_degs.clone(), cols, col_degs: other.col_degs.clone() }
    }

    /// Image of a vector expressed in the source basis.
    pub fn apply(&self, f: Fp, v: &FreeVec) -> FreeVec {
        let mut acc = FreeVec::zero();
        for t in &v.terms {
            acc = acc.add_scaled(f, &self.cols[t.pos as usize], &t.m, t.c);
        }
        acc
    }

    pub fn transpose(&self, f: Fp) -> Matrix {
        let mut terms: Vec<Vec<Term>> = vec![Vec::new(); self.nrows()];
        for (j, c) in self.cols.iter().enumerate() {
            for t in &c.terms {
                terms[t.pos as usize].push(Term { pos: j as u32, m: t.m, c: t.c });
            }
        }
        let cols = terms.into_iter().map(|ts| FreeVec::from_terms(f, ts)).collect();
        Matrix {
            row_degs: self.col_degs.iter().map(|d| -d).collect(),
            cols,
            col_degs: self.row_degs.iter().map(|d| -d).collect(),
        }
    }

    pub fn hcat(&self, o: &Matrix) -> Matrix {
        debug_assert_eq!(self.row_degs, o.row_degs);
        let mut m = self.clone();
        m.cols.extend(o.cols.iter().cloned());
        m.col_degs.extend(o.col_degs.iter().cloned());
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix {
            row_degs: self.row_degs.clone(),
            cols: idx.iter().map(|&j| self.cols[j].clone()).collect(),
            col_degs: idx.iter().map(|&j| self.col_degs[j]).collect(),
        }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, o: &Matrix) -> Matrix {
        let r = self.nrows() as i64;
        let mut row_degs = self.row_degs.clone();
        row_degs.extend(o.row_degs.iter().cloned());
        let mut cols = self.cols.clone();
        cols.extend(o.cols.iter().map(|c| c.shift_pos(r)));
        let mut col_degs = self.col_degs.clone();
        col_degs.extend(o.col_degs.iter().cloned());
        Matrix { row_degs, cols, col_degs }
    }

    pub fn entries_reduced(&self, ctx: &RingCtx) -> Matrix {
        Matrix {
            row_degs: self.row_degs.clone(),
            cols: self.cols.iter().map(|c| ctx.reduce(c)).collect(),
            col_degs: self.col_degs.clone(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.cols.iter().zip(&self.col_degs).all(|(c, &d)| {
            c.is_homogeneous(&self.row_degs) && c.degree(&self.row_degs).map_or(true, |x| x == d)
        })
    }
}

/// Standard-graded polynomial ring modulo a homogeneous ideal.
pub struct RingCtx {
    pub field: Fp,
    pub names: Vec<String>,
    /// Reduced Gröbner basis of the defining ideal, monic, ascending by lead term.
    pub defining: Vec<Poly>,
    ambient: OnceLock<Arc<RingCtx>>,
    pub(crate) res_cache: Mutex<HashMap<u64, Arc<crate::homalg::Resolution>>>,
}

impl fmt::Debug for RingCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingCtx")
            .field("p", &self.field.p)
            .field("vars", &self.names)
            .field("defining", &self.defining_strings())
            .finish()
    }
}

impl PartialEq for RingCtx {
    fn eq(&self, o: &RingCtx) -> bool {
        self.field == o.field && self.names == o.names && self.defining == o.defining
    }
}

pub type Ring = Arc<RingCtx>;

/// Build `R = F_p[names] / (defining)`.
pub fn make_ring(p: u32, names: &[&str], defining: &[Poly]) -> Result<Ring> {
    let field = Fp::new(p)?;
    if names.is_empty() || names.len() > MAX_VARS {
        return Err(Error::TooManyVariables(names.len()));
    }
    for g in defining {
        if !g.is_homogeneous() {
            return Err(Error::InhomogeneousInput);
        }
        if !g.uses_vars_below(names.len()) {
            return Err(Error::RingMismatch);
        }
    }
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let poly_ring = Arc::new(RingCtx::bare(field, names.clone(), Vec::new()));
    let gens: Vec<FreeVec> = defining.iter().map(|g| g.to_vec()).collect();
    let gb = crate::groebner::buchberger(&poly_ring, &[0], &gens);
    let defining: Vec<Poly> = gb.gens.iter().map(|v| v.component(0)).collect();
    if defining.is_empty() {
        return Ok(poly_ring);
    }
    Ok(Arc::new(RingCtx::bare(field, names, defining)))
}

/// Polynomial ring with the given variable names.
pub fn polynomial_ring(p: u32, names: &[&str]) -> Result<Ring> {
    make_ring(p, names, &[])
}

impl RingCtx {
    fn bare(field: Fp, names: Vec<String>, defining: Vec<Poly>) -> RingCtx {
        RingCtx {
            field,
            names,
            defining,
            ambient: OnceLock::new(),
            res_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.defining.is_empty()
    }

    /// The polynomial ring S over which this context is presented.
    pub fn ambient(self: &Arc<Self>) -> Ring {
        if self.is_polynomial_ring() {
            return self.clone();
        }
        self.ambient
            .get_or_init(|| Arc::new(RingCtx::bare(self.field, self.names.clone(), Vec::new())))
            .clone()
    }

    /// Same variables and field, defining ideal enlarged by `extra`.
    pub fn quotient_by(self: &Arc<Self>, extra: &[Poly]) -> Result<Ring> {
        let mut all = self.defining.clone();
        all.extend(extra.iter().cloned());
        let names: Vec<&str> = self.names.iter().map(|s| s.as_str()).collect();
        make_ring(self.field.p, &names, &all)
    }

    /// Same presentation in another characteristic.
    pub fn with_char(&self, p: u32) -> Result<Ring> {
        let f = Fp::new(p)?;
        let names: Vec<&str> = self.names.iter().map(|s| s.as_str()).collect();
        let defs: Vec<Poly> = self
            .defining
            .iter()
            .map(|g| {
                Poly::from_terms(f, g.terms.iter().map(|&(m, c)| (m, f.from_i64(self.field.signed(c)))).collect())
            })
            .collect();
        make_ring(p, &names, &defs)
    }

    /// Normal form of every component modulo the defining ideal.
    pub fn reduce(&self, v: &FreeVec) -> FreeVec {
        if self.defining.is_empty() || v.is_zero() {
            return v.clone();
        }
        let f = self.field;
        let mut rest = v.clone();
        let mut idx = 0;
        while idx < rest.terms.len() {
            let t = rest.terms[idx];
            match self.defining.iter().find(|g| g.terms[0].0.divides(&t.m)) {
                Some(g) => {
                    let q = g.terms[0].0.quotient_of(&t.m);
                    rest = rest.add_scaled(f, &g.to_vec_at(t.pos), &q, f.neg(t.c));
                }
                None => idx += 1,
            }
        }
        rest
    }

    pub fn reduce_poly(&self, p: &Poly) -> Poly {
        self.reduce(&p.to_vec()).component(0)
    }

    pub fn parse_poly(&self, s: &str) -> Result<Poly> {
        parse_poly(self.field, &self.names, s)
    }

    pub fn fmt_poly(&self, p: &Poly) -> String {
        p.fmt_with(self.field, &self.names)
    }

    pub fn defining_strings(&self) -> Vec<String> {
        self.defining.iter().map(|g| self.fmt_poly(g)).collect()
    }

    /// Exact arithmetic on polynomials of this ring (results not reduced modulo J).
    pub fn arith(&self, op: ArithOp, a: &Poly, b: &Poly) -> Result<Poly> {
        let n = self.nvars();
        if !a.uses_vars_below(n) || !b.uses_vars_below(n) {
            return Err(Error::RingMismatch);
        }
        let f = self.field;
        Ok(match op {
            ArithOp::Add => a.add(f, b),
            ArithOp::Sub => a.sub(f, b),
            ArithOp::Mul => a.mul(f, b),
            ArithOp::Scalar => {
                if !b.is_zero() && !b.is_unit() {
                    return Err(Error::NotAScalar);
                }
                a.scale(f, b.terms.first().map_or(0, |t| t.1))
            }
        })
    }

    pub(crate) fn cached_resolution(&self, key: u64) -> Option<Arc<crate::homalg::Resolution>> {
        self.res_cache.lock().expect("cache poisoned").get(&key).cloned()
    }

    pub(crate) fn store_resolution(&self, key: u64, r: Arc<crate::homalg::Resolution>) {
        self.res_cache.lock().expect("cache poisoned").insert(key, r);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Scalar,
}

/// Parse `c*x1^e1*...` terms joined by `+`/`-`.
pub fn parse_poly(f: Fp, names: &[String], s: &str) -> Result<Poly> {
    let chars: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let err = |col: usize, msg: &str| Error::PolySyntax { col: col + 1, msg: msg.to_string() };
    if chars.is_empty() {
        return Err(err(0, "empty polynomial"));
    }
    let mut terms: Vec<(Mono, u32)> = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < chars.len() {
        let mut sign = 1i64;
        if chars[i].1 == '+' || chars[i].1 == '-' {
            if chars[i].1 == '-' {
                sign = -1;
            }
            i += 1;
        } else if !first {
            return Err(err(chars[i].0, "expected '+' or '-'"));
        }
        first = false;
        let mut coef = f.from_i64(sign);
        let mut exps = [0u32; MAX_VARS];
        let mut factors = 0;
        loop {
            if i >= chars.len() {
                return Err(err(chars.last().map_or(0, |c| c.0 + 1), "expected a factor"));
            }
            let (col, c) = chars[i];
            if c.is_ascii_digit() {
                let mut v: u64 = 0;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    v = (v * 10 + chars[i].1.to_digit(10).unwrap() as u64) % f.p as u64;
                    i += 1;
                }
                coef = f.mul(coef, v as u32);
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().map(|x| x.1).collect();
                let idx = names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| err(col, &format!("unknown variable '{name}'")))?;
                let mut e = 1u32;
                if i < chars.len() && chars[i].1 == '^' {
                    i += 1;
                    let s0 = i;
                    let mut v: u64 = 0;
                    while i < chars.len() && chars[i].1.is_ascii_digit() {
                        v = v * 10 + chars[i].1.to_digit(10).unwrap() as u64;
                        if v > 10_000 {
                            return Err(err(chars[s0].0, "exponent too large"));
                        }
                        i += 1;
                    }
                    if i == s0 {
                        return Err(err(chars.get(s0).map_or(col, |c| c.0), "expected exponent"));
                    }
                    e = v as u32;
                }
                exps[idx] += e;
            } else {
                return Err(err(col, &format!("unexpected '{c}'")));
            }
            factors += 1;
            if i < chars.len() && chars[i].1 == '*' {
                i += 1;
                continue;
            }
            break;
        }
        debug_assert!(factors > 0);
        terms.push((Mono::from_exps(&exps[..names.len().min(MAX_VARS)])?, coef));
    }
    Ok(Poly::from_terms(f, terms))
}

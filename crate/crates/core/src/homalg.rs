//! Minimal free resolutions, Ext and Tor, comparison maps, syzygy modules and transposes.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{kernel, lift_through, minimal_subset};
use crate::modules::{grade, GradedModule, Minimized, ModuleMap};
use crate::ring::{FreeVec, Matrix, Ring, Term};

/// Initial segment `F_0 ← F_1 ← … ← F_L` of a minimal graded free resolution.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: GradedModule,
    pub min: Minimized,
    /// Generator degrees of each `F_i`.
    pub degs: Vec<Vec<i32>>,
    /// `diffs[i]` is the differential `F_{i+1} → F_i`.
    pub diffs: Vec<Matrix>,
    /// True when the last computed syzygy module vanished.
    pub complete: bool,
}

impl Resolution {
    /// Number of computed steps; the projective dimension when complete.
    pub fn length(&self) -> usize {
        self.diffs.len()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.degs.get(i).map_or(0, |d| d.len())
    }

    pub fn f_degs(&self, i: usize) -> &[i32] {
        self.degs.get(i).map_or(&[], |d| d.as_slice())
    }

    /// `d_i : F_i → F_{i-1}` for `i ≥ 1`; zero beyond the computed range when complete.
    pub fn d(&self, i: usize) -> Option<Matrix> {
        assert!(i >= 1);
        if let Some(m) = self.diffs.get(i - 1) {
            return Some(m.clone());
        }
        if self.complete {
            return Some(Matrix::zero(self.f_degs(i - 1).to_vec(), self.f_degs(i).to_vec()));
        }
        None
    }

    pub fn betti(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, ds) in self.degs.iter().enumerate() {
            for &d in ds {
                *entries.entry((i, d)).or_insert(0usize) += 1;
            }
        }
        BettiTable { entries, length: self.degs.len().saturating_sub(1) }
    }

    fn extend_to(&mut self, len: usize) {
        let ctx = self.module.ctx.clone();
        while !self.complete && self.diffs.len() < len {
            let next = match self.diffs.last() {
                None => self.min.module.presentation().clone(),
                Some(d) => kernel(&ctx, d, None),
            };
            if next.ncols() == 0 {
                self.complete = true;
                break;
            }
            self.degs.push(next.col_degs.clone());
            self.diffs.push(next);
        }
    }
}

/// Graded Betti numbers `β_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i32), usize>,
    pub length: usize,
}

impl BettiTable {
    pub fn totals(&self) -> Vec<usize> {
        let mut t = vec![0; self.length + 1];
        for (&(i, _), &b) in &self.entries {
            t[i] += b;
        }
        t
    }

    pub fn get(&self, i: usize, j: i32) -> usize {
        self.entries.get(&(i, j)).cloned().unwrap_or(0)
    }

    /// Rows indexed by `j - i`, as in Macaulay2.
    pub fn render(&self) -> String {
        if self.entries.is_empty() {
            return "total: 0\n".to_string();
        }
        let rows: Vec<i32> = {
            let lo = self.entries.keys().map(|&(i, j)| j - i as i32).min().unwrap();
            let hi = self.entries.keys().map(|&(i, j)| j - i as i32).max().unwrap();
            (lo..=hi).collect()
        };
        let totals = self.totals();
        let width = totals.iter().map(|t| t.to_string().len()).max().unwrap_or(1).max(self.length.to_string().len());
        let label_w = rows.iter().map(|r| format!("{r}:").len()).max().unwrap().max("total:".len());
        let mut out = String::new();
        out.push_str(&" ".repeat(label_w));
        for i in 0..=self.length {
            out.push_str(&format!(" {:>width$}", i));
        }
        out.push('\n');
        out.push_str(&format!("{:>label_w$}", "total:"));
        for t in &totals {
            out.push_str(&format!(" {:>width$}", t));
        }
        out.push('\n');
        for r in rows {
            out.push_str(&format!("{:>label_w$}", format!("{r}:")));
            for i in 0..=self.length {
                let b = self.get(i, r + i as i32);
                let s = if b == 0 { ".".to_string() } else { b.to_string() };
                out.push_str(&format!(" {:>width$}", s));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(&(i, j), &b)| serde_json::json!({"i": i, "degree": j, "value": b}))
            .collect();
        serde_json::json!({"totals": self.totals(), "entries": rows})
    }
}

/// Minimal graded free resolution computed to `len` steps, memoized per ring.
pub fn free_resolution(m: &GradedModule, len: usize) -> Arc<Resolution> {
    let key = m.fingerprint();
    if let Some(r) = m.ctx.cached_resolution(key) {
        if r.complete || r.length() >= len {
            return r;
        }
        let mut r2 = (*r).clone();
        r2.extend_to(len);
        let r2 = Arc::new(r2);
        m.ctx.store_resolution(key, r2.clone());
        return r2;
    }
    let min = m.minimize();
    let mut r = Resolution {
        module: m.clone(),
        degs: vec![min.module.gen_degs().to_vec()],
        min,
        diffs: Vec::new(),
        complete: false,
    };
    if r.degs[0].is_empty() {
        r.complete = true;
    }
    r.extend_to(len);
    let r = Arc::new(r);
    m.ctx.store_resolution(key, r.clone());
    r
}

/// `Ω^n M`, the image of `d_n` (and `M` itself for `n = 0`).
pub fn syzygy(m: &GradedModule, n: usize) -> GradedModule {
    if n == 0 {
        return m.clone();
    }
    let res = free_resolution(m, n + 1);
    let ctx = &m.ctx;
    match res.d(n) {
        Some(d) if n <= res.length() => {
            let rows = d.row_degs.clone();
            let module = GradedModule::raw_minimal(ctx, d, Matrix::zero(rows, vec![]));
            if let Some(next) = res.d(n + 1) {
                module.set_presentation(next);
            }
            module
        }
        _ => GradedModule::zero(ctx),
    }
}

/// An Ext or Tor module with the truncation used to compute it.
#[derive(Clone, Debug)]
pub struct ExtModule {
    pub module: GradedModule,
    pub index: usize,
    /// Length of the resolution segment of the first argument that was used.
    pub resolution_length: usize,
}

fn block_rels(n_pres: &Matrix, n_degs: &[i32], f_degs: &[i32], sign: i32) -> (Vec<i32>, Vec<FreeVec>) {
    let g = n_degs.len();
    let mut shifts = Vec::with_capacity(f_degs.len() * g);
    for &b in f_degs {
        for &d in n_degs {
            shifts.push(d + sign * b);
        }
    }
    let mut rels = Vec::new();
    for q in 0..f_degs.len() {
        for p in &n_pres.cols {
            rels.push(p.shift_pos((q * g) as i64));
        }
    }
    (shifts, rels)
}

/// Columns sending each `(row, l)` basis vector of a block ambient to `Σ_s m[row][s] e_(s,l)`.
fn pullback_cols(ctx: &Ring, m: &Matrix, g: usize) -> Vec<FreeVec> {
    let mt = m.transpose(ctx.field);
    let mut out = Vec::with_capacity(mt.ncols() * g);
    for c in &mt.cols {
        for l in 0..g {
            out.push(c.map_pos(ctx.field, |s| s * g as u32 + l as u32));
        }
    }
    out
}

/// Pushforward along `m`: each `(s,l)` basis vector goes to `Σ_q m[q][s] e_(q,l)`.
fn pushforward_cols(ctx: &Ring, m: &Matrix, g: usize) -> Vec<FreeVec> {
    let mut out = Vec::with_capacity(m.ncols() * g);
    for c in &m.cols {
        for l in 0..g {
            out.push(c.map_pos(ctx.field, |q| q * g as u32 + l as u32));
        }
    }
    out
}

fn homology(
    ctx: &Ring,
    shifts: Vec<i32>,
    mut rels: Vec<FreeVec>,
    inc: Vec<FreeVec>,
    out: Option<(Vec<FreeVec>, Vec<i32>, Vec<FreeVec>)>,
) -> GradedModule {
    let cands: Vec<FreeVec> = match out {
        None => (0..shifts.len()).map(|k| FreeVec::unit(k as u32)).collect(),
        Some((cols, tshifts, trels)) => {
            let a = Matrix::new(tshifts.clone(), cols.into_iter().map(|c| ctx.reduce(&c)).collect(), shifts.clone());
            let rel = Matrix::from_cols(tshifts, trels);
            kernel(ctx, &a, Some(&rel)).cols
        }
    };
    rels.extend(inc.into_iter().map(|c| ctx.reduce(&c)).filter(|c| !c.is_zero()));
    let keep = minimal_subset(ctx, &shifts, &rels, &cands);
    let gens = Matrix::from_cols(shifts.clone(), keep.into_iter().map(|k| cands[k].clone()).collect());
    let rels = Matrix::from_cols(shifts, rels);
    GradedModule::raw_minimal(ctx, gens, rels)
}

/// Cohomology of `Hom(F_•, N)` at a free module with degrees `f_degs`.
pub(crate) fn dual_homology(
    ctx: &Ring,
    f_degs: &[i32],
    d_in: Option<&Matrix>,
    d_out: Option<&Matrix>,
    n: &GradedModule,
) -> GradedModule {
    let g = n.ngens();
    let pn = n.presentation();
    let (shifts, rels) = block_rels(pn, n.gen_degs(), f_degs, -1);
    let inc = d_in.map(|d| pullback_cols(ctx, d, g)).unwrap_or_default();
    let out = d_out.filter(|d| d.ncols() > 0).map(|d| {
        let (ts, tr) = block_rels(pn, n.gen_degs(), &d.col_degs, -1);
        (pullback_cols(ctx, d, g), ts, tr)
    });
    homology(ctx, shifts, rels, inc, out)
}

/// `Ext^i_R(M, N)`.
pub fn ext(i: usize, m: &GradedModule, n: &GradedModule) -> ExtModule {
    let res = free_resolution(m, i + 1);
    let ctx = &m.ctx;
    if res.rank(i) == 0 || n.ngens() == 0 {
        return ExtModule { module: GradedModule::zero(ctx), index: i, resolution_length: res.length() };
    }
    let d_in = if i >= 1 { res.d(i) } else { None };
    let d_out = res.d(i + 1);
    let module = dual_homology(ctx, res.f_degs(i), d_in.as_ref(), d_out.as_ref(), n);
    ExtModule { module, index: i, resolution_length: res.length() }
}

/// `Tor_i^R(M, N)`.
pub fn tor(i: usize, m: &GradedModule, n: &GradedModule) -> ExtModule {
    let res = free_resolution(m, i + 1);
    let ctx = &m.ctx;
    if res.rank(i) == 0 || n.ngens() == 0 {
        return ExtModule { module: GradedModule::zero(ctx), index: i, resolution_length: res.length() };
    }
    let g = n.ngens();
    let pn = n.presentation();
    let (shifts, rels) = block_rels(pn, n.gen_degs(), res.f_degs(i), 1);
    let inc = res.d(i + 1).map(|d| pushforward_cols(ctx, &d, g)).unwrap_or_default();
    let out = if i >= 1 {
        let d = res.d(i).unwrap();
        let (ts, tr) = block_rels(pn, n.gen_degs(), &d.row_degs, 1);
        Some((pushforward_cols(ctx, &d, g), ts, tr))
    } else {
        None
    };
    let module = homology(ctx, shifts, rels, inc, out);
    ExtModule { module, index: i, resolution_length: res.length() }
}

/// Comparison maps `f_i : F_i → G_i` over `f`, for `i ≤ upto`.
pub fn lift_chain_map(f: &ModuleMap, fr: &Resolution, gr: &Resolution, upto: usize) -> Result<Vec<Matrix>> {
    let ctx = &f.source.ctx;
    let fld = ctx.field;
    let f0 = gr.min.to_min.mul(fld, &f.mat.mul(fld, &fr.min.from_min)).entries_reduced(ctx);
    let mut out = vec![f0];
    for i in 1..=upto {
        let Some(fd) = fr.d(i) else { return Err(Error::LiftFailed(i)) };
        if fd.ncols() == 0 {
            out.push(Matrix::zero(gr.f_degs(i).to_vec(), vec![]));
            continue;
        }
        let rhs = out[i - 1].mul(fld, &fd).entries_reduced(ctx);
        let gd = match gr.d(i) {
            Some(g) => g,
            None => return Err(Error::LiftFailed(i)),
        };
        if gd.ncols() == 0 {
            if rhs.cols.iter().all(|c| c.is_zero()) {
                out.push(Matrix::zero(vec![], fd.col_degs.clone()));
                continue;
            }
            return Err(Error::LiftFailed(i));
        }
        let x = lift_through(ctx, &gd, &rhs).map_err(|_| Error::LiftFailed(i))?;
        out.push(x);
    }
    Ok(out)
}

/// Pull back a `Hom(G_i, N)` element along `f_i`.
fn pull_back(ctx: &Ring, h: &FreeVec, fi: &Matrix, g: usize) -> FreeVec {
    let mut blocks: Vec<FreeVec> = vec![FreeVec::zero(); fi.nrows()];
    for t in &h.terms {
        let qp = t.pos as usize / g;
        blocks[qp].terms.push(Term { pos: t.pos % g as u32, ..*t });
    }
    let mut acc = FreeVec::zero();
    for (q, col) in fi.cols.iter().enumerate() {
        for t in &col.terms {
            let b = &blocks[t.pos as usize];
            if b.is_zero() {
                continue;
            }
            acc = acc.add_scaled(ctx.field, &b.shift_pos((q * g) as i64), &t.m, t.c);
        }
    }
    ctx.reduce(&acc)
}

/// `Ext^i(f, N) : Ext^i(M', N) → Ext^i(M, N)` for `f : M → M'`.
pub fn ext_induced(i: usize, f: &ModuleMap, n: &GradedModule) -> Result<ModuleMap> {
    let fr = free_resolution(&f.source, i + 1);
    let gr = free_resolution(&f.target, i + 1);
    let src = ext(i, &f.target, n).module;
    let dst = ext(i, &f.source, n).module;
    let ctx = &f.source.ctx;
    let mut cols = Vec::with_capacity(src.ngens());
    if src.ngens() > 0 && dst.ngens() > 0 {
        let chain = lift_chain_map(f, &fr, &gr, i)?;
        let fi = &chain[i];
        for h in &src.gens.cols {
            let v = pull_back(ctx, h, fi, n.ngens());
            let c = dst.coords(&v).ok_or_else(|| Error::IllDefinedMap("pulled back class outside Ext".into()))?;
            cols.push(c);
        }
    } else {
        cols = vec![FreeVec::zero(); src.ngens()];
    }
    let mat = Matrix::new(dst.gen_degs().to_vec(), cols, src.gen_degs().to_vec());
    Ok(ModuleMap::new_unchecked(src, dst, mat, f.degree))
}

/// `Tr_K M` and `λ_K M` from the minimal presentation of M.
#[derive(Clone, Debug)]
pub struct Transpose {
    pub tr: GradedModule,
    pub lambda: GradedModule,
}

pub fn transpose_k(m: &GradedModule, k: &GradedModule) -> Result<Transpose> {
    if m.ctx != k.ctx {
        return Err(Error::RingMismatch);
    }
    let ctx = &m.ctx;
    let res = free_resolution(m, 1);
    let d1 = match res.d(1) {
        Some(d) if d.ncols() > 0 => d,
        _ => {
            let z = GradedModule::zero(ctx);
            return Ok(Transpose { tr: z.clone(), lambda: z });
        }
    };
    let g = k.ngens();
    let pk = k.presentation();
    let (shifts, rels) = block_rels(pk, k.gen_degs(), &d1.col_degs, -1);
    let image: Vec<FreeVec> = pullback_cols(ctx, &d1, g).into_iter().map(|c| ctx.reduce(&c)).collect();
    let mut all = rels.clone();
    all.extend(image.iter().filter(|c| !c.is_zero()).cloned());
    let tr = GradedModule::raw(ctx, Matrix::identity(&shifts), Matrix::from_cols(shifts.clone(), all));
    let (src_shifts, _) = block_rels(pk, k.gen_degs(), &d1.row_degs, -1);
    let lambda = GradedModule::raw(
        ctx,
        Matrix::new(shifts.clone(), image, src_shifts),
        Matrix::from_cols(shifts, rels),
    );
    Ok(Transpose { tr, lambda })
}

/// `(Ext^{n+1}(Tr_K Ω^n M, K), Ext^{n+2}(Tr_K Ω^n M, K))`, the kernel and cokernel of η.
pub fn eta_obstructions(m: &GradedModule, k: &GradedModule, n: usize) -> Result<(ExtModule, ExtModule)> {
    let g = grade(m).ok_or(Error::ZeroModule)?;
    if g != n {
        return Err(Error::GradeMismatch { expected: n, found: g });
    }
    Ok(eta_obstructions_unchecked(m, k, n))
}

pub(crate) fn eta_obstructions_unchecked(m: &GradedModule, k: &GradedModule, n: usize) -> (ExtModule, ExtModule) {
    let om = syzygy(m, n);
    let t = transpose_k(&om, k).expect("same ring").tr;
    let e = crate::par::map_range(n + 1..n + 3, |i| ext(i, &t, k));
    let mut it = e.into_iter();
    (it.next().unwrap(), it.next().unwrap())
}

/// `Hom(M, N)` through `Ext^0`.
pub fn hom(m: &GradedModule, n: &GradedModule) -> GradedModule {
    ext(0, m, n).module
}

//! Finitely generated graded modules presented as subquotients of free modules.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::RangeInclusive;
use std::sync::{Arc, OnceLock};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, ideal_gb, minimal_subset, normal_form, quotient_series, GroebnerBasis, HfEntry, HilbertSeries, Lifter,
};
use crate::ring::{FreeVec, Matrix, Poly, Ring, Term};

/// `(im gens + im rels) / im rels` inside a graded free module `R^r`.
#[derive(Clone)]
pub struct GradedModule {
    pub ctx: Ring,
    pub shifts: Vec<i32>,
    pub gens: Matrix,
    pub rels: Matrix,
    minimal: bool,
    rel_gb: OnceLock<GroebnerBasis>,
    lifter: OnceLock<Lifter>,
    pres: OnceLock<Matrix>,
    series: OnceLock<HilbertSeries>,
}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedModule")
            .field("shifts", &self.shifts)
            .field("gens", &self.gens_strings())
            .field("rels", &self.rels_strings())
            .finish()
    }
}

impl PartialEq for GradedModule {
    fn eq(&self, o: &GradedModule) -> bool {
        self.shifts == o.shifts && self.gens == o.gens && self.rels == o.rels
    }
}

/// A minimal generating subset with translation matrices.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub module: GradedModule,
    /// Columns: old generators in coordinates of the minimal ones.
    pub to_min: Matrix,
    /// Columns: minimal generators in coordinates of the old ones.
    pub from_min: Matrix,
}

fn check_vars(ctx: &Ring, m: &Matrix) -> Result<()> {
    let n = ctx.nvars();
    for c in &m.cols {
        for t in &c.terms {
            if t.m.e[n..].iter().any(|&e| e > 0) {
                return Err(Error::RingMismatch);
            }
            if t.pos as usize >= m.nrows() {
                return Err(Error::LengthMismatch(t.pos as usize, m.nrows()));
            }
        }
    }
    Ok(())
}

impl GradedModule {
    /// Module built from data as given, without canonicalization.
    pub fn raw(ctx: &Ring, gens: Matrix, rels: Matrix) -> GradedModule {
        debug_assert_eq!(gens.row_degs, rels.row_degs);
        GradedModule {
            ctx: ctx.clone(),
            shifts: gens.row_degs.clone(),
            gens,
            rels,
            minimal: false,
            rel_gb: OnceLock::new(),
            lifter: OnceLock::new(),
            pres: OnceLock::new(),
            series: OnceLock::new(),
        }
    }

    pub(crate) fn raw_minimal(ctx: &Ring, gens: Matrix, rels: Matrix) -> GradedModule {
        let mut m = GradedModule::raw(ctx, gens, rels);
        m.minimal = true;
        m
    }

    /// Canonicalized subquotient: relations become a reduced basis, generators their normal forms.
    pub fn subquotient(ctx: &Ring, gens: Matrix, rels: Matrix, shifts: &[i32]) -> Result<GradedModule> {
        if gens.row_degs != shifts || rels.row_degs != shifts {
            return Err(Error::LengthMismatch(gens.nrows().max(rels.nrows()), shifts.len()));
        }
        check_vars(ctx, &gens)?;
        check_vars(ctx, &rels)?;
        if !gens.is_homogeneous() || !rels.is_homogeneous() {
            return Err(Error::InhomogeneousInput);
        }
        let gb = buchberger(ctx, shifts, &rels.cols);
        let rel_cols: Vec<FreeVec> = gb.gens.iter().filter(|v| !ctx.reduce(v).is_zero()).cloned().collect();
        let rels = Matrix::from_cols(shifts.to_vec(), rel_cols);
        let mut cols = Vec::new();
        let mut degs = Vec::new();
        for (c, &d) in gens.cols.iter().zip(&gens.col_degs) {
            let r = normal_form(c, &gb);
            if !r.is_zero() {
                cols.push(r);
                degs.push(d);
            }
        }
        let gens = Matrix::new(shifts.to_vec(), cols, degs);
        let m = GradedModule::raw(ctx, gens, rels);
        let _ = m.rel_gb.set(gb);
        Ok(m)
    }

    /// Free module with generators in the given degrees.
    pub fn free(ctx: &Ring, degs: &[i32]) -> GradedModule {
        GradedModule::raw_minimal(ctx, Matrix::identity(degs), Matrix::zero(degs.to_vec(), vec![]))
    }

    /// Cokernel of a presentation matrix, generated by the standard basis.
    pub fn cokernel_of(ctx: &Ring, pres: &Matrix) -> GradedModule {
        let degs = pres.row_degs.clone();
        GradedModule::raw(ctx, Matrix::identity(&degs), pres.entries_reduced(ctx))
    }

    /// `R / I`.
    pub fn quotient(ctx: &Ring, ideal: &[Poly]) -> GradedModule {
        let cols: Vec<FreeVec> = ideal.iter().filter(|p| !p.is_zero()).map(|p| ctx.reduce(&p.to_vec())).collect();
        GradedModule::cokernel_of(ctx, &Matrix::from_cols(vec![0], cols))
    }

    /// The ideal `I` as a submodule of `R`.
    pub fn ideal(ctx: &Ring, gens: &[Poly]) -> GradedModule {
        let cols: Vec<FreeVec> = gens.iter().filter(|p| !p.is_zero()).map(|p| ctx.reduce(&p.to_vec())).collect();
        GradedModule::raw(ctx, Matrix::from_cols(vec![0], cols), Matrix::zero(vec![0], vec![]))
    }

    pub fn zero(ctx: &Ring) -> GradedModule {
        GradedModule::raw_minimal(ctx, Matrix::zero(vec![], vec![]), Matrix::zero(vec![], vec![]))
    }

    pub fn ngens(&self) -> usize {
        self.gens.ncols()
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn gen_degs(&self) -> &[i32] {
        &self.gens.col_degs
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// Reduced basis of `im rels + J·F`.
    pub fn rel_gb(&self) -> &GroebnerBasis {
        self.rel_gb.get_or_init(|| buchberger(&self.ctx, &self.shifts, &self.rels.cols))
    }

    /// Normal form of an ambient vector modulo relations.
    pub fn reduce(&self, v: &FreeVec) -> FreeVec {
        normal_form(v, self.rel_gb())
    }

    pub fn is_zero_elem(&self, v: &FreeVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.cols.iter().all(|g| self.is_zero_elem(g))
    }

    pub fn lifter(&self) -> &Lifter {
        self.lifter.get_or_init(|| Lifter::new(&self.ctx, &self.gens, Some(&self.rels)))
    }

    /// Coefficients of `v` in terms of the generators.
    pub fn coords(&self, v: &FreeVec) -> Option<FreeVec> {
        self.lifter().lift(v).map(|x| self.ctx.reduce(&x))
    }

    pub fn contains(&self, v: &FreeVec) -> bool {
        self.lifter().contains(v)
    }

    /// Relations among the generators; rows index generators.
    pub fn presentation(&self) -> &Matrix {
        self.pres.get_or_init(|| self.lifter().kernel(&self.ctx))
    }

    pub(crate) fn set_presentation(&self, p: Matrix) {
        let _ = self.pres.set(p);
    }

    /// Stable key for caches, built from the presentation data.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.shifts.hash(&mut h);
        self.gens.hash(&mut h);
        self.rels.hash(&mut h);
        h.finish()
    }

    pub fn hilbert_series(&self) -> &HilbertSeries {
        self.series.get_or_init(|| {
            let whole = quotient_series(&self.ctx, &self.shifts, &self.rels.cols);
            let mut both = self.rels.cols.clone();
            both.extend(self.gens.cols.iter().cloned());
            let rest = quotient_series(&self.ctx, &self.shifts, &both);
            whole.add(&rest, -1)
        })
    }

    /// Krull dimension, None for the zero module.
    pub fn dim(&self) -> Option<usize> {
        self.hilbert_series().dim()
    }

    pub fn hf(&self, d: i32) -> i64 {
        self.hilbert_series().hf(d)
    }

    pub fn hf_table(&self, window: RangeInclusive<i32>) -> Vec<HfEntry> {
        self.hilbert_series().table(window)
    }

    /// Vector-space dimension when finite.
    pub fn length(&self) -> Option<i64> {
        match self.dim() {
            None => Some(0),
            Some(0) => Some(self.hilbert_series().multiplicity()),
            _ => None,
        }
    }

    /// Initial degree: lowest degree of a nonzero generator.
    pub fn min_degree(&self) -> Option<i32> {
        self.gens.cols.iter().zip(self.gen_degs()).filter(|(g, _)| !self.is_zero_elem(g)).map(|(_, &d)| d).min()
    }

    /// Minimal generating subset of the current generators.
    pub fn minimize(&self) -> Minimized {
        let n = self.ngens();
        if self.minimal {
            let id = Matrix::identity(self.gen_degs());
            return Minimized { module: self.clone(), to_min: id.clone(), from_min: id };
        }
        let keep = minimal_subset(&self.ctx, &self.shifts, &self.rels.cols, &self.gens.cols);
        let module = GradedModule::raw_minimal(&self.ctx, self.gens.select_cols(&keep), self.rels.clone());
        let _ = module.rel_gb.set(self.rel_gb().clone());
        let min_degs = module.gen_degs().to_vec();
        let mut to_cols = Vec::with_capacity(n);
        for (k, g) in self.gens.cols.iter().enumerate() {
            let c = match keep.iter().position(|&j| j == k) {
                Some(p) => FreeVec::unit(p as u32),
                None => module.coords(g).expect("generator outside its own module"),
            };
            to_cols.push(c);
        }
        let to_min = Matrix::new(min_degs.clone(), to_cols, self.gen_degs().to_vec());
        let from_min = Matrix::new(
            self.gen_degs().to_vec(),
            keep.iter().map(|&k| FreeVec::unit(k as u32)).collect(),
            min_degs,
        );
        Minimized { module, to_min, from_min }
    }

    /// The same module viewed over the ambient polynomial ring.
    pub fn restrict_to_ambient(&self) -> GradedModule {
        let s = self.ctx.ambient();
        if Arc::ptr_eq(&s, &self.ctx) {
            return self.clone();
        }
        let mut rels = self.rels.clone();
        for k in 0..self.rank() {
            for g in &self.ctx.defining {
                let v = g.to_vec_at(k as u32);
                let d = v.degree(&self.shifts).unwrap();
                rels.cols.push(v);
                rels.col_degs.push(d);
            }
        }
        GradedModule::raw(&s, self.gens.clone(), rels)
    }

    /// `M(a)`, with `M(a)_d = M_{a+d}`.
    pub fn twist(&self, a: i32) -> GradedModule {
        let tw = |m: &Matrix| Matrix {
            row_degs: m.row_degs.iter().map(|d| d - a).collect(),
            cols: m.cols.clone(),
            col_degs: m.col_degs.iter().map(|d| d - a).collect(),
        };
        let mut out = GradedModule::raw(&self.ctx, tw(&self.gens), tw(&self.rels));
        out.minimal = self.minimal;
        out
    }

    /// The same data over another ring with the same variables.
    pub fn over(&self, ctx: &Ring) -> GradedModule {
        let mut rels = self.rels.entries_reduced(ctx);
        let keep: Vec<usize> = (0..rels.ncols()).filter(|&j| !rels.cols[j].is_zero()).collect();
        rels = rels.select_cols(&keep);
        GradedModule::raw(ctx, self.gens.entries_reduced(ctx), rels)
    }

    /// `ann(M)` as a reduced Gröbner basis.
    pub fn annihilator(&self) -> Vec<Poly> {
        let ctx = &self.ctx;
        let r = self.rank();
        let n = self.ngens();
        if n == 0 {
            return ideal_gb(ctx, &[Poly::constant(1)]);
        }
        let mut row_degs = Vec::with_capacity(n * r);
        for k in 0..n {
            for l in 0..r {
                row_degs.push(self.shifts[l] - self.gen_degs()[k]);
            }
        }
        let mut col = FreeVec::zero();
        for (k, g) in self.gens.cols.iter().enumerate() {
            col = col.add(ctx.field, &g.shift_pos((k * r) as i64));
        }
        let a = Matrix::new(row_degs.clone(), vec![col], vec![0]);
        let mut rel_cols = Vec::new();
        for k in 0..n {
            for c in &self.rels.cols {
                rel_cols.push(c.shift_pos((k * r) as i64));
            }
        }
        let rel = Matrix::from_cols(row_degs, rel_cols);
        let ker = crate::groebner::kernel(ctx, &a, Some(&rel));
        let gens: Vec<Poly> = ker.cols.iter().map(|c| c.component(0)).collect();
        ideal_gb(ctx, &gens)
    }

    pub fn direct_sum(&self, o: &GradedModule) -> DirectSum {
        let m = GradedModule::raw(&self.ctx, self.gens.direct_sum(&o.gens), self.rels.direct_sum(&o.rels));
        let (a, b) = (self.ngens(), o.ngens());
        let degs = m.gen_degs().to_vec();
        let inj = [
            Matrix::new(degs.clone(), (0..a).map(|k| FreeVec::unit(k as u32)).collect(), self.gen_degs().to_vec()),
            Matrix::new(degs.clone(), (0..b).map(|k| FreeVec::unit((a + k) as u32)).collect(), o.gen_degs().to_vec()),
        ];
        let proj = [
            Matrix::new(
                self.gen_degs().to_vec(),
                (0..a + b).map(|k| if k < a { FreeVec::unit(k as u32) } else { FreeVec::zero() }).collect(),
                degs.clone(),
            ),
            Matrix::new(
                o.gen_degs().to_vec(),
                (0..a + b).map(|k| if k >= a { FreeVec::unit((k - a) as u32) } else { FreeVec::zero() }).collect(),
                degs,
            ),
        ];
        let [i0, i1] = inj;
        let [p0, p1] = proj;
        DirectSum {
            inj: [
                ModuleMap::new_unchecked(self.clone(), m.clone(), i0, 0),
                ModuleMap::new_unchecked(o.clone(), m.clone(), i1, 0),
            ],
            proj: [
                ModuleMap::new_unchecked(m.clone(), self.clone(), p0, 0),
                ModuleMap::new_unchecked(m.clone(), o.clone(), p1, 0),
            ],
            module: m,
        }
    }

    fn cols_strings(&self, m: &Matrix) -> Vec<Vec<String>> {
        m.cols.iter().map(|c| c.components(self.rank()).iter().map(|p| self.ctx.fmt_poly(p)).collect()).collect()
    }

    pub fn gens_strings(&self) -> Vec<Vec<String>> {
        self.cols_strings(&self.gens)
    }

    pub fn rels_strings(&self) -> Vec<Vec<String>> {
        self.cols_strings(&self.rels)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambient_rank": self.rank(),
            "shifts": self.shifts,
            "gen_degrees": self.gen_degs(),
            "gens": self.gens_strings(),
            "rels": self.rels_strings(),
        })
    }

    pub fn from_json(ctx: &Ring, v: &Value) -> Result<GradedModule> {
        let bad = |s: &str| Error::InvalidArgument(s.to_string());
        let shifts: Vec<i32> = serde_json::from_value(v["shifts"].clone()).map_err(|_| bad("shifts"))?;
        let rank = v["ambient_rank"].as_u64().ok_or_else(|| bad("ambient_rank"))? as usize;
        if rank != shifts.len() {
            return Err(Error::LengthMismatch(rank, shifts.len()));
        }
        let read = |key: &str| -> Result<Vec<FreeVec>> {
            let cols: Vec<Vec<String>> = serde_json::from_value(v[key].clone()).map_err(|_| bad(key))?;
            cols.iter()
                .map(|c| {
                    if c.len() != rank {
                        return Err(Error::LengthMismatch(c.len(), rank));
                    }
                    let ps = c.iter().map(|s| ctx.parse_poly(s)).collect::<Result<Vec<_>>>()?;
                    Ok(FreeVec::from_components(&ps))
                })
                .collect()
        };
        let gens = column_matrix(&shifts, read("gens")?)?;
        let rels = column_matrix(&shifts, read("rels")?)?;
        GradedModule::subquotient(ctx, gens, rels, &shifts)
    }
}

/// Matrix from homogeneous columns; zero columns are dropped.
pub fn column_matrix(shifts: &[i32], cols: Vec<FreeVec>) -> Result<Matrix> {
    let cols: Vec<FreeVec> = cols.into_iter().filter(|c| !c.is_zero()).collect();
    for c in &cols {
        if !c.is_homogeneous(shifts) {
            return Err(Error::InhomogeneousInput);
        }
    }
    Ok(Matrix::from_cols(shifts.to_vec(), cols))
}

/// `M ⊕ N` with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: GradedModule,
    pub inj: [ModuleMap; 2],
    pub proj: [ModuleMap; 2],
}

/// Graded homomorphism given on generators.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: GradedModule,
    pub target: GradedModule,
    /// Column j: image of source generator j in target-generator coordinates.
    pub mat: Matrix,
    pub degree: i32,
}

impl ModuleMap {
    pub fn new(source: GradedModule, target: GradedModule, mat: Matrix, degree: i32) -> Result<ModuleMap> {
        let f = ModuleMap::new_unchecked(source, target, mat, degree);
        if f.mat.ncols() != f.source.ngens() || f.mat.nrows() != f.target.ngens() {
            return Err(Error::LengthMismatch(f.mat.ncols(), f.source.ngens()));
        }
        if !f.mat.is_homogeneous() {
            return Err(Error::InhomogeneousInput);
        }
        if let Some(j) = f.ill_defined_relation() {
            return Err(Error::IllDefinedMap(format!("relation {j} does not map into the target relations")));
        }
        Ok(f)
    }

    /// Map whose well-definedness is guaranteed by construction.
    pub fn new_unchecked(source: GradedModule, target: GradedModule, mut mat: Matrix, degree: i32) -> ModuleMap {
        mat.row_degs = target.gen_degs().to_vec();
        mat.col_degs = source.gen_degs().iter().map(|d| d + degree).collect();
        ModuleMap { source, target, mat, degree }
    }

    pub fn identity(m: &GradedModule) -> ModuleMap {
        ModuleMap::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.gen_degs()), 0)
    }

    pub fn zero(source: &GradedModule, target: &GradedModule) -> ModuleMap {
        let mat = Matrix::zero(target.gen_degs().to_vec(), source.gen_degs().to_vec());
        ModuleMap::new_unchecked(source.clone(), target.clone(), mat, 0)
    }

    fn ill_defined_relation(&self) -> Option<usize> {
        let f = self.source.ctx.field;
        for (j, r) in self.source.presentation().cols.iter().enumerate() {
            let v = self.target.gens.apply(f, &self.mat.apply(f, r));
            if !self.target.is_zero_elem(&v) {
                return Some(j);
            }
        }
        None
    }

    pub fn is_well_defined(&self) -> bool {
        self.ill_defined_relation().is_none()
    }

    /// Images of source generators as target ambient vectors.
    pub fn images(&self) -> Matrix {
        let ctx = &self.target.ctx;
        let mut m = self.target.gens.mul(ctx.field, &self.mat).entries_reduced(ctx);
        m.row_degs = self.target.shifts.clone();
        m
    }

    /// Kernel as a subquotient of the source ambient, with its inclusion.
    pub fn kernel(&self) -> (GradedModule, ModuleMap) {
        let ctx = &self.source.ctx;
        let mut a = self.images();
        a.row_degs = a.row_degs.iter().map(|d| d - self.degree).collect();
        a.col_degs = self.source.gen_degs().to_vec();
        let mut rel = self.target.rels.clone();
        rel.row_degs = a.row_degs.clone();
        let k = crate::groebner::kernel(ctx, &a, Some(&rel));
        let src_pres = self.source.presentation();
        let keep = minimal_subset(ctx, &k.row_degs, &src_pres.cols, &k.cols);
        let k = k.select_cols(&keep);
        let gens = self.source.gens.mul(ctx.field, &k).entries_reduced(ctx);
        let module = GradedModule::raw_minimal(ctx, gens, self.source.rels.clone());
        let inc = ModuleMap::new_unchecked(module.clone(), self.source.clone(), k, 0);
        (module, inc)
    }

    /// Cokernel with its projection from the target.
    pub fn cokernel(&self) -> (GradedModule, ModuleMap) {
        let ctx = &self.target.ctx;
        let rels = self.target.rels.hcat(&self.images());
        let module = GradedModule::raw(ctx, self.target.gens.clone(), rels);
        let proj = ModuleMap::new_unchecked(self.target.clone(), module.clone(), Matrix::identity(self.target.gen_degs()), 0);
        (module, proj)
    }

    pub fn image(&self) -> GradedModule {
        let mut gens = self.images();
        gens.col_degs = self.source.gen_degs().iter().map(|d| d + self.degree).collect();
        GradedModule::raw(&self.target.ctx, gens, self.target.rels.clone())
    }

    pub fn is_surjective(&self) -> bool {
        let im = self.images();
        let l = Lifter::new(&self.target.ctx, &im, Some(&self.target.rels));
        self.target.gens.cols.iter().all(|g| l.contains(g))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_zero()
    }

    pub fn is_iso(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ModuleMap) -> ModuleMap {
        let mat = g.mat.mul(self.source.ctx.field, &self.mat).entries_reduced(&self.source.ctx);
        ModuleMap::new_unchecked(self.source.clone(), g.target.clone(), mat, self.degree + g.degree)
    }

    /// Equality as maps: every generator difference vanishes in the target.
    pub fn equals(&self, o: &ModuleMap) -> bool {
        let f = self.target.ctx.field;
        let a = self.images();
        let b = o.images();
        a.cols.iter().zip(&b.cols).all(|(x, y)| self.target.is_zero_elem(&x.sub(f, y)))
    }

    pub fn is_zero(&self) -> bool {
        self.images().cols.iter().all(|c| self.target.is_zero_elem(c))
    }
}

/// Projective dimension value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pd {
    Finite(usize),
    Infinite,
}

/// Numerical invariants of a graded module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub dim: Option<usize>,
    pub depth: Option<usize>,
    /// None stands for the zero module's infinite grade.
    pub grade: Option<usize>,
    pub pd: Pd,
    pub cod: Option<usize>,
}

/// `Hom(M, N)` as a subquotient, element representatives indexed by M's generators.
pub fn hom_module(m: &GradedModule, n: &GradedModule) -> Result<GradedModule> {
    if m.ctx != n.ctx {
        return Err(Error::RingMismatch);
    }
    let pres = m.presentation().clone();
    Ok(crate::homalg::dual_homology(&m.ctx, m.gen_degs(), None, Some(&pres), n))
}

/// Map `M → N` represented by a homogeneous element of `Hom(M, N)`.
pub fn element_as_map(m: &GradedModule, n: &GradedModule, h: &FreeVec) -> Result<ModuleMap> {
    let r = n.ngens();
    let mut cols = vec![FreeVec::zero(); m.ngens()];
    for t in &h.terms {
        let q = t.pos as usize / r;
        let l = t.pos as usize % r;
        cols[q].terms.push(Term { pos: l as u32, ..*t });
    }
    let mat = Matrix::new(n.gen_degs().to_vec(), cols, m.gen_degs().to_vec());
    ModuleMap::new(m.clone(), n.clone(), mat, 0)
}

/// `M ⊗ N` presented on products of generators.
pub fn tensor(m: &GradedModule, n: &GradedModule) -> Result<GradedModule> {
    if m.ctx != n.ctx {
        return Err(Error::RingMismatch);
    }
    Ok(tensor_of_presentations(&m.ctx, m.gen_degs(), m.presentation(), n.gen_degs(), n.presentation()))
}

pub(crate) fn tensor_of_presentations(ctx: &Ring, a: &[i32], pa: &Matrix, b: &[i32], pb: &Matrix) -> GradedModule {
    let nb = b.len();
    let mut shifts = Vec::with_capacity(a.len() * nb);
    for &x in a {
        for &y in b {
            shifts.push(x + y);
        }
    }
    let mut rels = Vec::new();
    for p in &pa.cols {
        for j in 0..nb {
            rels.push(p.map_pos(ctx.field, |i| i * nb as u32 + j as u32));
        }
    }
    for i in 0..a.len() {
        for q in &pb.cols {
            rels.push(q.shift_pos((i * nb) as i64));
        }
    }
    let rels = Matrix::from_cols(shifts.clone(), rels.into_iter().filter(|v| !v.is_zero()).collect());
    GradedModule::raw(ctx, Matrix::identity(&shifts), rels)
}

/// Numerical invariants; depth through the Auslander–Buchsbaum formula over the ambient ring.
pub fn invariants(m: &GradedModule) -> InvariantReport {
    let dim = m.dim();
    let dim_r = GradedModule::free(&m.ctx, &[0]).dim();
    let cod = match (dim_r, dim) {
        (Some(a), Some(b)) => Some(a - b),
        _ => None,
    };
    if dim.is_none() {
        return InvariantReport { dim, depth: None, grade: None, pd: Pd::Finite(0), cod };
    }
    InvariantReport { dim, depth: depth(m), grade: grade(m), pd: pd(m), cod }
}

/// Graded depth, None for the zero module.
pub fn depth(m: &GradedModule) -> Option<usize> {
    if m.is_zero() {
        return None;
    }
    let s = m.restrict_to_ambient();
    let nv = m.ctx.nvars();
    let res = crate::homalg::free_resolution(&s, nv + 1);
    Some(nv - res.length())
}

/// `min{i : Ext^i(M, R) ≠ 0}`, None for the zero module.
pub fn grade(m: &GradedModule) -> Option<usize> {
    if m.is_zero() {
        return None;
    }
    let r = GradedModule::free(&m.ctx, &[0]);
    (0..=m.ctx.nvars()).find(|&i| !crate::homalg::ext(i, m, &r).module.is_zero())
}

/// Projective dimension over R, searched up to `depth R + 1`.
pub fn pd(m: &GradedModule) -> Pd {
    let cap = if m.ctx.is_polynomial_ring() {
        m.ctx.nvars() + 1
    } else {
        depth(&GradedModule::free(&m.ctx, &[0])).unwrap_or(0) + 1
    };
    let res = crate::homalg::free_resolution(m, cap);
    if res.complete {
        Pd::Finite(res.length())
    } else {
        Pd::Infinite
    }
}

//! Semidualizing and canonical modules, perfection, the linkage operator and its variants.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{colon, ideal_contains, ideal_gb};
use crate::homalg::{eta_obstructions_unchecked, ext, ext_induced, free_resolution, transpose_k, ExtModule};
use crate::modules::{depth, grade, hom_module, invariants, pd, GradedModule, ModuleMap, Pd};
use crate::par;
use crate::ring::{FreeVec, Matrix, Poly, Ring};
use crate::verdict::Verdict;

/// Canonical module `Ext^c_S(R, S(-m))` of a Cohen–Macaulay quotient.
pub fn canonical_module(ctx: &Ring) -> Result<GradedModule> {
    let m = ctx.nvars();
    let r = GradedModule::free(ctx, &[0]);
    if ctx.is_polynomial_ring() {
        return Ok(GradedModule::free(ctx, &[m as i32]));
    }
    let dim = r.dim().ok_or(Error::ZeroModule)?;
    if depth(&r) != Some(dim) {
        return Err(Error::NotCohenMacaulay);
    }
    let s = ctx.ambient();
    let c = m - dim;
    let rs = GradedModule::quotient(&s, &ctx.defining);
    let e = ext(c, &rs, &GradedModule::free(&s, &[0])).module.twist(-(m as i32));
    let w = e.over(ctx);
    Ok(w.minimize().module)
}

/// Evidence for `K` being semidualizing up to a bound.
#[derive(Clone, Debug, Serialize)]
pub struct SemidualizingCert {
    pub bound: usize,
    pub homothety_iso: bool,
    pub ext_vanishing: Vec<(usize, bool)>,
    pub verdict: Verdict,
}

/// The homothety `R → Hom(K, K)`, `1 ↦ id_K`.
pub fn homothety(k: &GradedModule) -> Result<ModuleMap> {
    let h = hom_module(k, k)?;
    let g = k.ngens();
    let id = FreeVec { terms: (0..g).map(|q| crate::ring::Term { pos: (q * g + q) as u32, m: crate::ring::Mono::one(), c: 1 }).collect() };
    let c = h.coords(&id).ok_or_else(|| Error::IllDefinedMap("identity outside Hom(K,K)".into()))?;
    let r = GradedModule::free(&k.ctx, &[0]);
    let mat = Matrix::new(h.gen_degs().to_vec(), vec![c], vec![0]);
    Ok(ModuleMap::new_unchecked(r, h, mat, 0))
}

pub fn is_semidualizing(k: &GradedModule, bound: usize) -> SemidualizingCert {
    let homothety_iso = homothety(k).map(|h| h.is_iso()).unwrap_or(false);
    let ext_vanishing: Vec<(usize, bool)> = if homothety_iso {
        par::map_range(1..bound + 1, |i| (i, ext(i, k, k).module.is_zero()))
    } else {
        Vec::new()
    };
    let verdict = if !homothety_iso {
        Verdict::Fails("homothety R -> Hom(K,K) is not an isomorphism".into())
    } else if let Some((i, _)) = ext_vanishing.iter().find(|(_, z)| !z) {
        Verdict::Fails(format!("Ext^{i}(K,K) != 0"))
    } else {
        Verdict::Holds
    };
    SemidualizingCert { bound, homothety_iso, ext_vanishing, verdict }
}

/// `grade M = pd M`.
pub fn is_perfect(m: &GradedModule) -> Result<Verdict> {
    let g = grade(m).ok_or(Error::ZeroModule)?;
    Ok(match pd(m) {
        Pd::Finite(p) if p == g => Verdict::Holds,
        Pd::Finite(p) => Verdict::Fails(format!("grade {g}, pd {p}")),
        Pd::Infinite => Verdict::Fails(format!("grade {g}, pd infinite")),
    })
}

/// Bounded G_K-perfection test.
pub fn is_gk_perfect(m: &GradedModule, k: &GradedModule, bound: usize) -> Result<Verdict> {
    let n = grade(m).ok_or(Error::ZeroModule)?;
    if bound <= n {
        return Ok(Verdict::UndecidedAtBound(bound));
    }
    let vanish = par::map_range(n + 1..bound + 1, |i| (i, ext(i, m, k).module.is_zero()));
    if let Some((i, _)) = vanish.iter().find(|(_, z)| !z) {
        return Ok(Verdict::Fails(format!("Ext^{i}(M,K) != 0")));
    }
    let (e1, e2) = eta_obstructions_unchecked(m, k, n);
    if !e1.module.is_zero() {
        return Ok(Verdict::Fails(format!("Ext^{}(Tr_K Omega^{n} M, K) != 0", n + 1)));
    }
    if !e2.module.is_zero() {
        return Ok(Verdict::Fails(format!("Ext^{}(Tr_K Omega^{n} M, K) != 0", n + 2)));
    }
    Ok(Verdict::Holds)
}

pub fn is_cohen_macaulay(m: &GradedModule) -> bool {
    let inv = invariants(m);
    inv.dim.is_some() && inv.dim == inv.depth
}

/// Subcategory in which the source of a reflexive epimorphism is certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CategoryTag {
    /// Perfect modules of grade n.
    Pn,
    /// G_K-perfect modules of grade n.
    GKPn,
    /// Cohen–Macaulay modules of grade n.
    CMn,
    /// Modules of grade n on which η is an isomorphism.
    RefnK,
}

/// Epimorphism `φ : X ↠ M` with X certified in an n-reflexive subcategory.
#[derive(Clone, Debug)]
pub struct ReflexiveEpi {
    pub phi: ModuleMap,
    pub n: usize,
    pub k: GradedModule,
    pub tag: CategoryTag,
}

pub(crate) fn in_category(x: &GradedModule, k: &GradedModule, n: usize, tag: CategoryTag, bound: usize) -> bool {
    match tag {
        CategoryTag::Pn => is_perfect(x).map(|v| v.holds()).unwrap_or(false),
        CategoryTag::GKPn => is_gk_perfect(x, k, bound).map(|v| v.holds()).unwrap_or(false),
        CategoryTag::CMn => is_cohen_macaulay(x),
        CategoryTag::RefnK => {
            let (e1, e2) = eta_obstructions_unchecked(x, k, n);
            e1.module.is_zero() && e2.module.is_zero()
        }
    }
}

impl ReflexiveEpi {
    /// Checks surjectivity, equal grades and membership of the source.
    pub fn certify(phi: ModuleMap, k: &GradedModule, tag: CategoryTag, bound: usize) -> Result<ReflexiveEpi> {
        if !phi.is_surjective() {
            return Err(Error::NotSurjective);
        }
        let gm = grade(&phi.target).ok_or(Error::ZeroModule)?;
        let gx = grade(&phi.source).ok_or(Error::ZeroModule)?;
        if gm != gx {
            return Err(Error::GradeMismatch { expected: gm, found: gx });
        }
        if !in_category(&phi.source, k, gm, tag, bound) {
            return Err(Error::NotInCategory(format!("{tag:?}")));
        }
        Ok(ReflexiveEpi { phi, n: gm, k: k.clone(), tag })
    }

    /// Natural epimorphism `R/a ↠ R/b` for ideals `a ⊆ b`.
    pub fn cyclic(ctx: &Ring, a: &[Poly], b: &[Poly], k: &GradedModule, tag: CategoryTag, bound: usize) -> Result<ReflexiveEpi> {
        let x = GradedModule::quotient(ctx, a);
        let m = GradedModule::quotient(ctx, b);
        let phi = ModuleMap::new(x, m, Matrix::identity(&[0]), 0)?;
        ReflexiveEpi::certify(phi, k, tag, bound)
    }
}

/// Image of the linkage operator with its epimorphism and the source's obstructions.
#[derive(Clone, Debug)]
pub struct LinkResult {
    pub linked_module: GradedModule,
    pub link_epi: ModuleMap,
    pub obstructions: (ExtModule, ExtModule),
}

/// `coker(Ext^n(φ, K))`, the module linked to the target of φ.
pub fn link_operator(e: &ReflexiveEpi) -> Result<LinkResult> {
    if e.phi.is_injective() {
        return Err(Error::InjectivePhi);
    }
    let induced = ext_induced(e.n, &e.phi, &e.k)?;
    let (linked, proj) = induced.cokernel();
    let obstructions = eta_obstructions_unchecked(&e.phi.target, &e.k, e.n);
    Ok(LinkResult { linked_module: linked, link_epi: proj, obstructions })
}

/// True iff the target of φ is linked by φ.
pub fn is_linked_by(e: &ReflexiveEpi) -> Result<bool> {
    if e.phi.is_injective() {
        return Err(Error::InjectivePhi);
    }
    let (e1, _) = eta_obstructions_unchecked(&e.phi.target, &e.k, e.n);
    Ok(e1.module.is_zero())
}

/// Result of linking twice.
#[derive(Clone, Debug)]
pub struct DoubleLink {
    pub verdict: Verdict,
    pub first: LinkResult,
    pub second: LinkResult,
    pub note: Option<String>,
}

pub fn double_link_check(e: &ReflexiveEpi, bound: usize) -> Result<DoubleLink> {
    let first = link_operator(e)?;
    let psi = first.link_epi.clone();
    let second_epi = ReflexiveEpi { phi: psi, n: e.n, k: e.k.clone(), tag: e.tag };
    let _ = bound;
    let second = link_operator(&second_epi)?;
    let (e1, e2) = &first.obstructions;
    let (verdict, note) = if !e1.module.is_zero() {
        (Verdict::Fails(format!("Ext^{}(Tr_K Omega^n M, K) != 0", e.n + 1)), None)
    } else if !e2.module.is_zero() {
        let hf: Vec<i64> = (-6..6).map(|d| e2.module.hf(d)).collect();
        (Verdict::Holds, Some(format!("linked but eta not iso; cokernel HF on -6..5: {hf:?}")))
    } else {
        (Verdict::Holds, None)
    };
    Ok(DoubleLink { verdict, first, second, note })
}

/// Classical-style link of a cyclic module through a regular sequence.
#[derive(Clone, Debug)]
pub struct CyclicLink {
    pub module: GradedModule,
    pub annihilator: Vec<Poly>,
    /// `(c : I)` computed directly.
    pub colon: Vec<Poly>,
}

impl CyclicLink {
    pub fn agrees_with_colon(&self) -> bool {
        self.annihilator == self.colon
    }
}

/// `K̄ / (0 :_K̄ I)` with `K̄ = Ext^n(R/c, K)`.
pub fn cyclic_link(ctx: &Ring, i: &[Poly], c: &[Poly], k: &GradedModule) -> Result<CyclicLink> {
    let cgb = ideal_gb(ctx, c);
    let igb = ideal_gb(ctx, i);
    if c.iter().any(|f| !ideal_contains(ctx, &igb, f)) {
        return Err(Error::InvalidArgument("c must be contained in I".into()));
    }
    if cgb == igb {
        return Err(Error::EqualIdeals);
    }
    let n = c.len();
    let rc = GradedModule::quotient(ctx, c);
    if grade(&rc) != Some(n) {
        return Err(Error::NotRegularSequence);
    }
    let gi = grade(&GradedModule::quotient(ctx, i)).unwrap_or(usize::MAX);
    if gi != n {
        return Err(Error::GradeMismatch { expected: n, found: gi });
    }
    let kbar = ext(n, &rc, k).module;
    let module = quotient_by_annihilated(&kbar, i);
    let annihilator = module.annihilator();
    let colon = colon(ctx, c, i);
    Ok(CyclicLink { module, annihilator, colon })
}

/// `N / (0 :_N I)`.
pub fn quotient_by_annihilated(n: &GradedModule, i: &[Poly]) -> GradedModule {
    let ann = zero_colon(n, i);
    let mut rels = n.rels.clone();
    for (c, d) in ann.gens.cols.iter().zip(ann.gen_degs()) {
        rels.cols.push(c.clone());
        rels.col_degs.push(*d);
    }
    GradedModule::raw(&n.ctx, n.gens.clone(), rels)
}

/// `(0 :_N I)` as a submodule of N's ambient.
pub fn zero_colon(n: &GradedModule, i: &[Poly]) -> GradedModule {
    let ctx = &n.ctx;
    let i: Vec<&Poly> = i.iter().filter(|p| !p.is_zero()).collect();
    if i.is_empty() {
        return n.clone();
    }
    let mut target = GradedModule::zero(ctx);
    for f in &i {
        let d = f.degree().unwrap() as i32;
        target = target.direct_sum(&n.twist(d)).module;
    }
    let g = n.ngens();
    let cols: Vec<FreeVec> = (0..g)
        .map(|j| {
            let mut v = FreeVec::zero();
            for (t, f) in i.iter().enumerate() {
                v = v.add(ctx.field, &f.to_vec_at((t * g + j) as u32));
            }
            v
        })
        .collect();
    let mat = Matrix::new(target.gen_degs().to_vec(), cols, n.gen_degs().to_vec());
    let map = ModuleMap::new_unchecked(n.clone(), target, mat, 0);
    map.kernel().0
}

/// Trace ideal generators `h(m)` for `h ∈ Hom(M, R)`.
pub fn trace_ideal(m: &GradedModule) -> Result<Vec<Poly>> {
    let r = GradedModule::free(&m.ctx, &[0]);
    let h = hom_module(m, &r)?;
    let mut gens = Vec::new();
    for c in &h.gens.cols {
        for t in 0..m.ngens() {
            let p = c.component(t as u32);
            if !p.is_zero() {
                gens.push(p);
            }
        }
    }
    Ok(ideal_gb(&m.ctx, &gens))
}

/// `λ_R M`.
pub fn horizontal_link(m: &GradedModule) -> Result<GradedModule> {
    let r = GradedModule::free(&m.ctx, &[0]);
    Ok(transpose_k(m, &r)?.lambda)
}

/// Stable and `Ext^1(Tr M, R) = 0`.
pub fn is_horizontally_linked(m: &GradedModule) -> Result<bool> {
    let trace = trace_ideal(m)?;
    let stable = !trace.iter().any(|p| p.is_unit());
    if !stable {
        return Ok(false);
    }
    let r = GradedModule::free(&m.ctx, &[0]);
    let t = transpose_k(m, &r)?.tr;
    Ok(ext(1, &t, &r).module.is_zero())
}

fn combos(len: usize, s: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for v in &out {
            for c in -s..=s {
                let mut w = v.clone();
                w.push(c);
                next.push(w);
            }
        }
        out = next;
    }
    out.retain(|v| {
        let first = v.iter().find(|&&c| c != 0);
        first == Some(&1) && v.iter().any(|c| c.abs() == s)
    });
    out.sort_by_key(|v| (v.iter().filter(|&&c| c != 0).count(), v.iter().map(|c| c.abs()).sum::<i64>()));
    out
}

pub const REGULAR_SEQUENCE_BUDGET: u32 = 2;

/// Regular sequence of length n inside I found by enumerating small combinations.
pub fn regular_sequence_in(ctx: &Ring, i: &[Poly], n: usize) -> Result<Vec<Poly>> {
    let gens: Vec<Poly> = ideal_gb(ctx, i).into_iter().collect();
    let not_found = Error::NotFound { n, budget: REGULAR_SEQUENCE_BUDGET };
    if n == 0 {
        return Ok(Vec::new());
    }
    if gens.is_empty() || grade(&GradedModule::quotient(ctx, &gens)).map_or(true, |g| g < n) {
        return Err(not_found);
    }
    let mut degrees: Vec<u32> = gens.iter().map(|g| g.degree().unwrap()).collect();
    degrees.sort();
    degrees.dedup();
    let mut chosen: Vec<Poly> = Vec::new();
    'outer: while chosen.len() < n {
        for s in 1..=REGULAR_SEQUENCE_BUDGET as i64 {
            for &d in &degrees {
                let block: Vec<&Poly> = gens.iter().filter(|g| g.degree() == Some(d)).collect();
                for coeffs in combos(block.len(), s) {
                    let mut f = Poly::zero();
                    for (c, g) in coeffs.iter().zip(&block) {
                        f = f.add(ctx.field, &g.scale(ctx.field, ctx.field.from_i64(*c)));
                    }
                    let f = ctx.reduce_poly(&f);
                    if f.is_zero() {
                        continue;
                    }
                    let mut trial = chosen.clone();
                    trial.push(f.clone());
                    if grade(&GradedModule::quotient(ctx, &trial)) == Some(trial.len()) {
                        chosen = trial;
                        continue 'outer;
                    }
                }
            }
        }
        return Err(not_found);
    }
    Ok(chosen)
}

/// `R/x` with `K̄ = Ext^n(R/x, K)` moved to it.
pub fn change_of_rings(ctx: &Ring, x: &[Poly], k: &GradedModule) -> Result<(Ring, GradedModule)> {
    if x.is_empty() {
        return Ok((ctx.clone(), k.clone()));
    }
    let rx = GradedModule::quotient(ctx, x);
    if grade(&rx) != Some(x.len()) {
        return Err(Error::NotRegularSequence);
    }
    let bar = ctx.quotient_by(x)?;
    let kbar = ext(x.len(), &rx, k).module.over(&bar);
    Ok((bar, kbar.minimize().module))
}

/// Hilbert functions of `Ext^{n+i}_R(M, K)` and `Ext^i_{R/x}(M, K̄)` on a window.
pub fn change_of_rings_hf(
    ctx: &Ring,
    x: &[Poly],
    k: &GradedModule,
    m: &GradedModule,
    i: usize,
    window: std::ops::RangeInclusive<i32>,
) -> Result<(Vec<i64>, Vec<i64>)> {
    let (bar, kbar) = change_of_rings(ctx, x, k)?;
    let up = ext(x.len() + i, m, k).module;
    let down = ext(i, &m.over(&bar), &kbar).module;
    Ok((window.clone().map(|d| up.hf(d)).collect(), window.map(|d| down.hf(d)).collect()))
}

/// Invariants recorded at one end of a link.
#[derive(Clone, Debug, Serialize)]
pub struct WalkStep {
    pub gk_perfect: Verdict,
    pub pd: Pd,
    pub ext_hf: Vec<(usize, Vec<i64>)>,
    pub betti: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct WalkReport {
    pub modules: Vec<GradedModule>,
    pub steps: Vec<WalkStep>,
    pub perfection_preserved: bool,
    pub even_ext_agree: bool,
    pub even_pd_agree: bool,
}

/// Hilbert functions agree on the window after aligning initial degrees.
pub fn same_hf_up_to_shift(a: &GradedModule, b: &GradedModule, window: std::ops::RangeInclusive<i32>) -> bool {
    match (a.min_degree(), b.min_degree()) {
        (Some(da), Some(db)) => window.map(|d| d + db).all(|d| a.hf(d - db + da) == b.hf(d)),
        (None, None) => true,
        _ => false,
    }
}

/// Runs a chain of links, checking that each step starts where the previous ended.
/// Invariants are recorded with each module twisted to initial degree 0.
pub fn liaison_walk(steps: &[ReflexiveEpi], bound: usize, window: std::ops::RangeInclusive<i32>) -> Result<WalkReport> {
    let first = steps.first().ok_or_else(|| Error::InvalidArgument("empty walk".into()))?;
    let mut modules = vec![first.phi.target.clone()];
    for (s, e) in steps.iter().enumerate() {
        let prev = modules.last().unwrap();
        let tgt = &e.phi.target;
        if prev.annihilator() != tgt.annihilator() || !same_hf_up_to_shift(prev, tgt, window.clone()) {
            return Err(Error::BrokenChain(s));
        }
        modules.push(link_operator(e)?.linked_module);
    }
    let k = &first.k;
    let n = first.n;
    let record = |m: &GradedModule| -> Result<WalkStep> {
        let m = &m.twist(m.min_degree().unwrap_or(0));
        let ext_hf = (n + 1..=bound).map(|i| (i, window.clone().map(|d| ext(i, m, k).module.hf(d)).collect())).collect();
        Ok(WalkStep {
            gk_perfect: is_gk_perfect(m, k, bound)?,
            pd: pd(m),
            ext_hf,
            betti: free_resolution(m, bound).betti().totals(),
        })
    };
    let recs = par::map(&modules, |m| record(m));
    let steps_out = recs.into_iter().collect::<Result<Vec<_>>>()?;
    let perfection_preserved = steps_out.windows(2).all(|w| w[0].gk_perfect.holds() == w[1].gk_perfect.holds());
    let even: Vec<&WalkStep> = steps_out.iter().step_by(2).collect();
    let even_ext_agree = even.windows(2).all(|w| w[0].ext_hf == w[1].ext_hf);
    let even_pd_agree = even.windows(2).all(|w| w[0].pd == w[1].pd);
    Ok(WalkReport { modules, steps: steps_out, perfection_preserved, even_ext_agree, even_pd_agree })
}

impl LinkResult {
    pub fn to_json(&self, window: std::ops::RangeInclusive<i32>) -> serde_json::Value {
        let m = &self.linked_module;
        let ctx = &m.ctx;
        let (e1, e2) = &self.obstructions;
        serde_json::json!({
            "linked_presentation": m.to_json(),
            "annihilator_gb": m.annihilator().iter().map(|p| ctx.fmt_poly(p)).collect::<Vec<_>>(),
            "betti": free_resolution(m, ctx.nvars() + 1).betti().to_json(),
            "obstruction_hilbert_functions": {
                "E1": e1.module.hf_table(window.clone()),
                "E2": e2.module.hf_table(window),
            },
        })
    }
}

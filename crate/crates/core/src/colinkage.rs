//! Foxby classes, the colinkage operator and the transfer between linkage and colinkage.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homalg::{eta_obstructions_unchecked, ext, ext_induced, tor, ExtModule};
use crate::linkage::{is_gk_perfect, CategoryTag, ReflexiveEpi};
use crate::modules::{grade, hom_module, pd, tensor, GradedModule, ModuleMap, Pd};
use crate::par;
use crate::ring::{FreeVec, Matrix, Term};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FoxbyClass {
    Auslander,
    Bass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    TensorK,
    HomK,
}

/// `M → Hom(K, M ⊗ K)`, `m ↦ (k ↦ m ⊗ k)`.
pub fn mu(m: &GradedModule, k: &GradedModule) -> Result<ModuleMap> {
    let t = tensor(m, k)?;
    let h = hom_module(k, &t)?;
    let nk = k.ngens();
    let nt = t.ngens();
    let mut cols = Vec::with_capacity(m.ngens());
    for i in 0..m.ngens() {
        let v = FreeVec::from_terms(m.ctx.field, (0..nk).map(|q| unit_term(q * nt + i * nk + q)).collect());
        cols.push(h.coords(&v).ok_or_else(|| Error::IllDefinedMap("m ⊗ - outside Hom(K, M ⊗ K)".into()))?);
    }
    let mat = Matrix::new(h.gen_degs().to_vec(), cols, m.gen_degs().to_vec());
    Ok(ModuleMap::new_unchecked(m.clone(), h, mat, 0))
}

/// `K ⊗ Hom(K, M) → M`, `k ⊗ h ↦ h(k)`.
pub fn nu(m: &GradedModule, k: &GradedModule) -> Result<ModuleMap> {
    let h = hom_module(k, m)?;
    let t = tensor(k, &h)?;
    let nh = h.ngens();
    let g = m.ngens();
    let mut cols = vec![FreeVec::zero(); k.ngens() * nh];
    for (s, hs) in h.gens.cols.iter().enumerate() {
        for term in &hs.terms {
            let q = term.pos as usize / g;
            let l = term.pos as usize % g;
            cols[q * nh + s].terms.push(Term { pos: l as u32, ..*term });
        }
    }
    let mat = Matrix::new(m.gen_degs().to_vec(), cols, t.gen_degs().to_vec());
    Ok(ModuleMap::new_unchecked(t, m.clone(), mat, 0))
}

fn unit_term(pos: usize) -> Term {
    Term { pos: pos as u32, m: crate::ring::Mono::one(), c: 1 }
}

/// `M ⊗ K` with μ, or `Hom(K, M)` with ν.
pub fn foxby_transform(dir: Direction, m: &GradedModule, k: &GradedModule) -> Result<(GradedModule, ModuleMap)> {
    if m.ctx != k.ctx {
        return Err(Error::RingMismatch);
    }
    match dir {
        Direction::TensorK => {
            let map = mu(m, k)?;
            Ok((tensor(m, k)?, map))
        }
        Direction::HomK => {
            let map = nu(m, k)?;
            Ok((hom_module(k, m)?, map))
        }
    }
}

/// `Hom(K, f)`.
pub fn hom_induced(k: &GradedModule, f: &ModuleMap) -> Result<ModuleMap> {
    let ctx = &f.source.ctx;
    let a = hom_module(k, &f.source)?;
    let b = hom_module(k, &f.target)?;
    let ga = f.source.ngens();
    let gb = f.target.ngens();
    let mut cols = Vec::with_capacity(a.ngens());
    for h in &a.gens.cols {
        let mut v = FreeVec::zero();
        for q in 0..k.ngens() {
            let block: Vec<crate::ring::Poly> = (0..ga).map(|l| h.component((q * ga + l) as u32)).collect();
            let img = f.mat.apply(ctx.field, &FreeVec::from_components(&block));
            v = v.add(ctx.field, &img.shift_pos((q * gb) as i64));
        }
        cols.push(b.coords(&v).ok_or_else(|| Error::IllDefinedMap("Hom(K, f) leaves Hom(K, N)".into()))?);
    }
    let mat = Matrix::new(b.gen_degs().to_vec(), cols, a.gen_degs().to_vec());
    Ok(ModuleMap::new_unchecked(a, b, mat, f.degree))
}

/// `f ⊗ K`.
pub fn tensor_induced(f: &ModuleMap, k: &GradedModule) -> Result<ModuleMap> {
    let ctx = &f.source.ctx;
    let a = tensor(&f.source, k)?;
    let b = tensor(&f.target, k)?;
    let nk = k.ngens();
    let mut cols = Vec::with_capacity(a.ngens());
    for i in 0..f.source.ngens() {
        for j in 0..nk {
            let c = &f.mat.cols[i];
            cols.push(c.map_pos(ctx.field, |l| l * nk as u32 + j as u32));
        }
    }
    let mat = Matrix::new(b.gen_degs().to_vec(), cols, a.gen_degs().to_vec());
    Ok(ModuleMap::new_unchecked(a, b, mat, f.degree))
}

/// `M ∈ Δ_K`: ν is an isomorphism.
pub fn in_delta(m: &GradedModule, k: &GradedModule) -> Result<bool> {
    Ok(nu(m, k)?.is_iso())
}

/// `M ∈ ∇_K`: μ is an isomorphism.
pub fn in_nabla(m: &GradedModule, k: &GradedModule) -> Result<bool> {
    Ok(mu(m, k)?.is_iso())
}

/// Bounded Auslander or Bass class certificate.
#[derive(Clone, Debug, Serialize)]
pub struct FoxbyCert {
    pub class: FoxbyClass,
    pub bound: usize,
    pub natural_map_iso: bool,
    pub tor_vanishing: Vec<(usize, bool)>,
    pub ext_vanishing: Vec<(usize, bool)>,
    /// Why a passing bounded check is conclusive, if it is.
    pub rule: Option<String>,
    pub verdict: Verdict,
}

fn is_rank_one_free(k: &GradedModule) -> bool {
    k.rank() == 1
        && k.ngens() == 1
        && k.rels.cols.iter().all(|c| k.ctx.reduce(c).is_zero())
        && k.gens.cols[0].terms.len() == 1
        && k.gens.cols[0].terms[0].m.deg == 0
}

pub fn class_member(class: FoxbyClass, m: &GradedModule, k: &GradedModule, bound: usize) -> Result<FoxbyCert> {
    if bound == 0 {
        return Err(Error::InvalidArgument("bound must be positive".into()));
    }
    let (natural_map_iso, tor_mod, ext_pair) = match class {
        FoxbyClass::Auslander => (mu(m, k)?.is_iso(), m.clone(), (k.clone(), tensor(m, k)?)),
        FoxbyClass::Bass => (nu(m, k)?.is_iso(), hom_module(k, m)?, (k.clone(), m.clone())),
    };
    let checks = par::map_range(1..bound + 1, |i| {
        (i, tor(i, &tor_mod, k).module.is_zero(), ext(i, &ext_pair.0, &ext_pair.1).module.is_zero())
    });
    let tor_vanishing: Vec<(usize, bool)> = checks.iter().map(|c| (c.0, c.1)).collect();
    let ext_vanishing: Vec<(usize, bool)> = checks.iter().map(|c| (c.0, c.2)).collect();
    let failure = if !natural_map_iso {
        Some("natural map is not an isomorphism".to_string())
    } else if let Some((i, _)) = tor_vanishing.iter().find(|c| !c.1) {
        Some(format!("Tor_{i} != 0"))
    } else {
        ext_vanishing.iter().find(|c| !c.1).map(|(i, _)| format!("Ext^{i} != 0"))
    };
    let rule = if is_rank_one_free(k) {
        Some("K is free of rank one".to_string())
    } else {
        match class {
            FoxbyClass::Auslander if matches!(pd(m), Pd::Finite(_)) => Some("finite projective dimension".to_string()),
            FoxbyClass::Bass if natural_map_iso && matches!(pd(&tor_mod), Pd::Finite(_)) => {
                Some("Hom(K, M) has finite projective dimension".to_string())
            }
            _ => None,
        }
    };
    let verdict = match (&failure, &rule) {
        (Some(f), _) => Verdict::Fails(f.clone()),
        (None, Some(_)) => Verdict::Holds,
        (None, None) => Verdict::UndecidedAtBound(bound),
    };
    Ok(FoxbyCert { class, bound, natural_map_iso, tor_vanishing, ext_vanishing, rule, verdict })
}

/// `Ext^n(Hom(K, M), K)`.
pub fn dnk(m: &GradedModule, k: &GradedModule, n: usize) -> Result<GradedModule> {
    let g = grade(m).ok_or(Error::ZeroModule)?;
    if g != n {
        return Err(Error::GradeMismatch { expected: n, found: g });
    }
    Ok(ext(n, &hom_module(k, m)?, k).module)
}

/// Kernel and cokernel of ξ, read off η under the ν hypothesis.
pub fn xi_obstructions(m: &GradedModule, k: &GradedModule, n: usize) -> Result<(ExtModule, ExtModule)> {
    if !in_delta(m, k)? {
        return Err(Error::NuNotIso);
    }
    let g = grade(m).ok_or(Error::ZeroModule)?;
    if g != n {
        return Err(Error::GradeMismatch { expected: n, found: g });
    }
    Ok(eta_obstructions_unchecked(m, k, n))
}

/// `P_K`-dimension as `pd Hom(K, M)` when M is certified in the Bass class.
#[derive(Clone, Debug, Serialize)]
pub struct PkDimension {
    pub value: Option<Pd>,
    pub verdict: Verdict,
    pub reason: Option<String>,
}

pub fn pk_dimension(m: &GradedModule, k: &GradedModule, bound: usize) -> Result<PkDimension> {
    let cert = class_member(FoxbyClass::Bass, m, k, bound)?;
    if !cert.verdict.holds() {
        let reason = match &cert.verdict {
            Verdict::Fails(s) => format!("Bass class membership fails: {s}"),
            _ => "Bass class membership undecided".to_string(),
        };
        return Ok(PkDimension { value: None, verdict: Verdict::UndecidedAtBound(bound), reason: Some(reason) });
    }
    Ok(PkDimension { value: Some(pd(&hom_module(k, m)?)), verdict: Verdict::Holds, reason: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoTag {
    /// `P_K`-perfect of grade n.
    PKn,
    /// `G(P_K)`-perfect of grade n.
    GKPKn,
}

/// Epimorphism `ψ : Y ↠ N` with Y certified in an n-coreflexive subcategory.
#[derive(Clone, Debug)]
pub struct CoreflexiveEpi {
    pub phi: ModuleMap,
    pub n: usize,
    pub k: GradedModule,
    pub tag: CoTag,
}

fn in_cocategory(y: &GradedModule, k: &GradedModule, n: usize, tag: CoTag, bound: usize) -> Result<bool> {
    let cert = class_member(FoxbyClass::Bass, y, k, bound)?;
    match cert.verdict {
        Verdict::Holds => {}
        Verdict::Fails(_) => return Ok(false),
        Verdict::UndecidedAtBound(b) => return Err(Error::BassMembershipUndecided(b)),
    }
    Ok(match tag {
        CoTag::PKn => pd(&hom_module(k, y)?) == Pd::Finite(n),
        CoTag::GKPKn => is_gk_perfect(y, k, bound)?.holds(),
    })
}

impl CoreflexiveEpi {
    pub fn certify(phi: ModuleMap, k: &GradedModule, tag: CoTag, bound: usize) -> Result<CoreflexiveEpi> {
        if !phi.is_surjective() {
            return Err(Error::NotSurjective);
        }
        let gm = grade(&phi.target).ok_or(Error::ZeroModule)?;
        let gy = grade(&phi.source).ok_or(Error::ZeroModule)?;
        if gm != gy {
            return Err(Error::GradeMismatch { expected: gm, found: gy });
        }
        if !in_cocategory(&phi.source, k, gm, tag, bound)? {
            return Err(Error::NotInCategory(format!("{tag:?}")));
        }
        Ok(CoreflexiveEpi { phi, n: gm, k: k.clone(), tag })
    }
}

/// Image of the colinkage operator with its epimorphism from `D^n_K(Y)`.
#[derive(Clone, Debug)]
pub struct CoLinkResult {
    pub colinked_module: GradedModule,
    pub colink_epi: ModuleMap,
}

/// Image of `Ext^n(i^▾, K)` for the kernel inclusion `i : ker ψ → Y`.
pub fn colink_operator(e: &CoreflexiveEpi) -> Result<CoLinkResult> {
    let (ker, inc) = e.phi.kernel();
    if ker.is_zero() {
        return Err(Error::InjectivePhi);
    }
    let inc_dual = hom_induced(&e.k, &inc)?;
    let induced = ext_induced(e.n, &inc_dual, &e.k)?;
    let (_, kinc) = induced.kernel();
    let (colinked, proj) = kinc.cokernel();
    Ok(CoLinkResult { colinked_module: colinked, colink_epi: proj })
}

/// True iff the E1 obstruction of the target vanishes.
pub fn is_colinked_by(e: &CoreflexiveEpi) -> Result<bool> {
    if e.phi.is_injective() {
        return Err(Error::InjectivePhi);
    }
    let (e1, _) = xi_obstructions(&e.phi.target, &e.k, e.n)?;
    Ok(e1.module.is_zero())
}

/// Result of moving an epimorphism across the Foxby equivalence.
#[derive(Clone, Debug)]
pub struct Transfer<E> {
    pub epi: E,
    /// Natural maps at source and target are isomorphisms.
    pub round_trip_iso: bool,
}

/// `φ ↦ φ ⊗ K` from a perfect reflexive epimorphism to a coreflexive one.
pub fn adjoint_transfer(e: &ReflexiveEpi, k: &GradedModule, bound: usize) -> Result<Transfer<CoreflexiveEpi>> {
    if e.tag != CategoryTag::Pn {
        return Err(Error::InvalidArgument("forward transfer needs a perfect source".into()));
    }
    let cert = class_member(FoxbyClass::Auslander, &e.phi.source, k, bound)?;
    if !cert.verdict.holds() {
        return Err(Error::ClassMembershipUndecided(bound));
    }
    let f = tensor_induced(&e.phi, k)?;
    let round_trip_iso = mu(&e.phi.source, k)?.is_iso() && mu(&e.phi.target, k)?.is_iso();
    let epi = CoreflexiveEpi::certify(f, k, CoTag::PKn, bound)?;
    Ok(Transfer { epi, round_trip_iso })
}

/// `ψ ↦ Hom(K, ψ)` back to a perfect reflexive epimorphism.
pub fn adjoint_transfer_back(e: &CoreflexiveEpi, bound: usize) -> Result<Transfer<ReflexiveEpi>> {
    let k = &e.k;
    let cert = class_member(FoxbyClass::Bass, &e.phi.source, k, bound)?;
    if !cert.verdict.holds() {
        return Err(Error::ClassMembershipUndecided(bound));
    }
    let f = hom_induced(k, &e.phi)?;
    let round_trip_iso = nu(&e.phi.source, k)?.is_iso() && nu(&e.phi.target, k)?.is_iso();
    let r = GradedModule::free(&k.ctx, &[0]);
    let epi = ReflexiveEpi::certify(f, &r, CategoryTag::Pn, bound)?;
    Ok(Transfer { epi, round_trip_iso })
}

//! Graded local cohomology through local duality, Serre-condition tests and Bass numbers.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{HfEntry, HilbertSeries};
use crate::homalg::{ext, transpose_k};
use crate::linkage::{change_of_rings, regular_sequence_in};
use crate::modules::{depth, grade, GradedModule};
use crate::par;
use crate::verdict::Verdict;

/// Hilbert function of `H^i_m(M)` on a window.
#[derive(Clone, Debug, Serialize)]
pub struct LocalCohomologyHF {
    pub index: usize,
    pub table: Vec<HfEntry>,
    pub finite_length: bool,
    /// Exact support when finite.
    pub support: Option<BTreeMap<i32, i64>>,
}

impl LocalCohomologyHF {
    pub fn is_zero_on_window(&self) -> bool {
        self.table.iter().all(|e| e.value == 0)
    }

    pub fn value(&self, j: i32) -> Option<i64> {
        self.table.iter().find(|e| e.degree == j).map(|e| e.value)
    }
}

/// `Ext^{m-i}_S(M, S)`, the local dual of `H^i_m(M)` up to the twist by `-m`.
pub fn local_dual(m: &GradedModule, i: usize) -> GradedModule {
    let nv = m.ctx.nvars();
    let s = m.ctx.ambient();
    if i > nv {
        return GradedModule::zero(&s);
    }
    ext(nv - i, &m.restrict_to_ambient(), &GradedModule::free(&s, &[0])).module
}

/// Degree-by-degree dimensions of a finite-length module.
pub fn finite_support(series: &HilbertSeries) -> Option<BTreeMap<i32, i64>> {
    if series.is_zero() {
        return Some(BTreeMap::new());
    }
    let (num, offset, d) = series.reduced();
    if d > 0 {
        return None;
    }
    Some(num.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (offset + k as i32, c)).collect())
}

/// `HF_{H^i}(j) = HF_{Ext^{m-i}_S(M,S)}(-j-m)`.
pub fn local_cohomology_hf(m: &GradedModule, i: usize, window: RangeInclusive<i32>) -> LocalCohomologyHF {
    let nv = m.ctx.nvars() as i32;
    let e = local_dual(m, i);
    let table = window.map(|j| HfEntry { degree: j, value: e.hf(-j - nv) }).collect();
    let support = finite_support(e.hilbert_series()).map(|s| s.into_iter().map(|(d, v)| (-d - nv, v)).collect());
    LocalCohomologyHF { index: i, table, finite_length: support.is_some(), support }
}

pub fn local_cohomology_vanishes(m: &GradedModule, i: usize) -> bool {
    local_dual(m, i).is_zero()
}

/// H^i vanishes below depth and above dim, and is nonzero at both ends.
pub fn grothendieck_band_ok(m: &GradedModule) -> bool {
    let nv = m.ctx.nvars();
    let (Some(d), Some(t)) = (m.dim(), depth(m)) else {
        return (0..=nv).all(|i| local_cohomology_vanishes(m, i));
    };
    (0..=nv).all(|i| {
        let z = local_cohomology_vanishes(m, i);
        if i < t || i > d {
            z
        } else {
            !z || (i != t && i != d)
        }
    })
}

/// `Ext^i(Tr_K M, K) = 0` for `1 ≤ i ≤ t`, after passing to `R/x` for a maximal regular
/// sequence x in `ann M` so that M has grade zero.
pub fn serre_st_proxy(m: &GradedModule, k: &GradedModule, t: usize) -> Result<Verdict> {
    if t == 0 {
        return Err(Error::InvalidArgument("t must be positive".into()));
    }
    let n = grade(m).ok_or(Error::ZeroModule)?;
    let (mm, kk) = if n == 0 {
        (m.clone(), k.clone())
    } else {
        let x = regular_sequence_in(&m.ctx, &m.annihilator(), n)?;
        let (bar, kbar) = change_of_rings(&m.ctx, &x, k)?;
        (m.over(&bar).minimize().module, kbar)
    };
    let tr = transpose_k(&mm.minimize().module, &kk)?.tr;
    let zero = par::map_range(1..t + 1, |i| (i, ext(i, &tr, &kk).module.is_zero()));
    Ok(match zero.iter().find(|(_, z)| !z) {
        None => Verdict::Holds,
        Some((i, _)) => Verdict::Fails(format!("Ext^{i}(Tr_K M, K) != 0")),
    })
}

/// Finite length of `H^i_m(M)` for all `i < dim M`.
pub fn is_generalized_cm(m: &GradedModule) -> Result<bool> {
    let d = m.dim().ok_or(Error::ZeroModule)?;
    if d == 0 {
        return Err(Error::ZeroDimensional);
    }
    Ok(par::map_range(0..d, |i| local_dual(m, i).dim().map_or(true, |e| e == 0)).into_iter().all(|b| b))
}

/// `μ^i = dim_k Ext^i(k, M)` for `0 ≤ i ≤ upto`.
pub fn bass_numbers(m: &GradedModule, upto: usize) -> Vec<i64> {
    let ctx = &m.ctx;
    let vars: Vec<_> = (0..ctx.nvars()).map(crate::ring::Poly::var).collect();
    let k = GradedModule::quotient(ctx, &vars);
    par::map_range(0..upto + 1, |i| ext(i, &k, m).module.length().expect("Ext(k, M) has finite length"))
}

/// Codimension-unmixedness over the ambient ring: `dim Ext^e_S(M,S) < m - e` for all `e > codim M`.
pub fn is_unmixed(m: &GradedModule) -> Result<bool> {
    let s = m.restrict_to_ambient();
    let nv = m.ctx.nvars();
    let d = s.dim().ok_or(Error::ZeroModule)?;
    let c = nv - d;
    let free = GradedModule::free(&s.ctx, &[0]);
    Ok(((c + 1)..=nv).all(|e| ext(e, &s, &free).module.dim().map_or(true, |de| de + e < nv)))
}

/// Both sides of the Serre-condition / local-cohomology equivalence for a directly linked pair.
#[derive(Clone, Debug, Serialize)]
pub struct SchenzelReport {
    pub t: usize,
    pub serre: Verdict,
    pub vanishing: Verdict,
}

/// `M` satisfies the Serre proxy iff `H^i_m(N) = 0` for `dim N - t < i < dim N`.
pub fn schenzel_check(m: &GradedModule, n: &GradedModule, k: &GradedModule, t: usize) -> Result<SchenzelReport> {
    let serre = serre_st_proxy(m, k, t)?;
    let dn = n.dim().ok_or(Error::ZeroModule)?;
    let lo = (dn + 1).saturating_sub(t);
    let bad = (lo..dn).find(|&i| !local_cohomology_vanishes(n, i));
    let vanishing = match bad {
        None => Verdict::Holds,
        Some(i) => Verdict::Fails(format!("H^{i}_m(N) != 0")),
    };
    if serre.holds() != vanishing.holds() {
        return Err(Error::Inconsistent(format!("Serre proxy {} but local cohomology band {}", serre.label(), vanishing.label())));
    }
    Ok(SchenzelReport { t, serre, vanishing })
}

/// `H^i_m(M)` against the Matlis dual of `H^{d-i}_m(N)`, index by index.
#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    /// `H^i(M)_j = H^{d-i}(N)_{-j-sigma}` for the aligning shift sigma.
    pub sigma: Option<i32>,
    pub per_index: Vec<(usize, Verdict)>,
    pub verdict: Verdict,
}

pub fn duality_check(m: &GradedModule, n: &GradedModule, band: RangeInclusive<usize>) -> Result<DualityReport> {
    let d = m.dim().ok_or(Error::ZeroModule)?;
    if n.dim() != Some(d) {
        let v = Verdict::Fails(format!("dimensions differ: {d} and {:?}", n.dim()));
        return Ok(DualityReport { sigma: None, per_index: Vec::new(), verdict: v });
    }
    let mut sigma: Option<i32> = None;
    let mut per_index = Vec::new();
    for i in band.filter(|&i| i <= d) {
        let a = local_cohomology_hf(m, i, 0..=0).support;
        let b = local_cohomology_hf(n, d - i, 0..=0).support;
        let v = match (a, b) {
            (Some(a), Some(b)) => {
                let dual: BTreeMap<i32, i64> = b.into_iter().map(|(j, v)| (-j, v)).collect();
                match (a.keys().next(), dual.keys().next()) {
                    (None, None) => Verdict::Holds,
                    (Some(&x), Some(&y)) => {
                        let s = *sigma.get_or_insert(y - x);
                        let moved: BTreeMap<i32, i64> = dual.into_iter().map(|(j, v)| (j - s, v)).collect();
                        Verdict::from_bool(moved == a, || format!("H^{i}(M) and the dual of H^{}(N) differ", d - i))
                    }
                    _ => Verdict::Fails(format!("exactly one of H^{i}(M), H^{}(N) vanishes", d - i)),
                }
            }
            _ => Verdict::Fails(format!("infinite length at index {i}")),
        };
        per_index.push((i, v));
    }
    let verdict = per_index.iter().fold(Verdict::Holds, |acc, (_, v)| acc.and(v.clone()));
    Ok(DualityReport { sigma, per_index, verdict })
}

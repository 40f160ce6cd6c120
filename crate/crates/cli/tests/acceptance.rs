//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use modlink::cohomology::{duality_check, local_cohomology_hf};
use modlink::colinkage::{
    adjoint_transfer, class_member, colink_operator, is_colinked_by, mu, pk_dimension, tensor_induced, CoTag, CoreflexiveEpi,
    FoxbyClass,
};
use modlink::groebner::{ideal_gb, satisfies_buchberger_criterion, GroebnerBasis};
use modlink::homalg::{ext, ext_induced};
use modlink::linkage::{
    canonical_module, is_linked_by, is_semidualizing, liaison_walk, link_operator, same_hf_up_to_shift, CategoryTag, ReflexiveEpi,
};
use modlink::cohomology::bass_numbers;
use modlink::modules::{depth, pd, Pd};
use modlink::ring::{Matrix, Poly};
use modlink::{make_ring, polynomial_ring, GradedModule, ModuleMap, Ring, Verdict};
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_modlink");

/// Twelve consecutive degrees.
const HF_WINDOW: RangeInclusive<i32> = -6..=5;
const BUDGET_GROEBNER: Duration = Duration::from_secs(5);
const BUDGET_CLASSICAL: Duration = Duration::from_secs(30);
const BUDGET_TOTAL: Duration = Duration::from_secs(300);
const P: u32 = 32003;

const CUBIC: [&str; 3] = ["x*z-y^2", "y*w-z^2", "x*w-y*z"];
const CUBIC_CI: [&str; 2] = ["x*z-y^2", "y*w-z^2"];
const SKEW: [&str; 4] = ["x*z", "x*w", "y*z", "y*w"];
const SKEW_CI: [&str; 2] = ["x*z", "y*w"];
const SEMIGROUP: [&str; 3] = ["y^2-x*z", "y*z", "z^2"];

type Check = fn() -> Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ring(p: u32, vars: &[&str]) -> Ring {
    polynomial_ring(p, vars).unwrap()
}

fn qring(p: u32, vars: &[&str], defining: &[&str]) -> Ring {
    let s = ring(p, vars);
    make_ring(p, vars, &polys(&s, defining)).unwrap()
}

fn polys(r: &Ring, src: &[&str]) -> Vec<Poly> {
    src.iter().map(|s| r.parse_poly(s).unwrap()).collect()
}

fn cyclic(r: &Ring, ideal: &[&str]) -> GradedModule {
    GradedModule::quotient(r, &polys(r, ideal))
}

fn shown(r: &Ring, ps: &[Poly]) -> Vec<String> {
    let mut v: Vec<String> = ps.iter().map(|p| r.fmt_poly(p)).collect();
    v.sort();
    v
}

fn sorted(src: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = src.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

fn hf(m: &GradedModule, w: RangeInclusive<i32>) -> Vec<i64> {
    w.map(|d| m.hf(d)).collect()
}

/// `M` twisted so that its initial degree is 0.
fn normalized(m: &GradedModule) -> GradedModule {
    m.twist(m.min_degree().unwrap_or(0))
}

/// First `i` with `Ext^i_S(k, M) != 0` over the ambient polynomial ring.
fn depth_by_ext(m: &GradedModule) -> usize {
    let s = m.restrict_to_ambient();
    let vars: Vec<Poly> = (0..s.ctx.nvars()).map(Poly::var).collect();
    let k = GradedModule::quotient(&s.ctx, &vars);
    (0..=s.ctx.nvars()).find(|&i| !ext(i, &k, &s).module.is_zero()).expect("nonzero module")
}

/// Unmixedness through the dimensions of `Ext^e_S(M, S)`.
fn ehv_unmixed(m: &GradedModule) -> bool {
    let s = m.restrict_to_ambient();
    let nv = s.ctx.nvars();
    let free = GradedModule::free(&s.ctx, &[0]);
    let d = s.dim().expect("nonzero module");
    ((nv - d + 1)..=nv).all(|e| ext(e, &s, &free).module.dim().map_or(true, |de| de + e < nv))
}

/// Serre's condition for an equidimensional module over a polynomial ring.
fn serre_by_ext_dims(m: &GradedModule, t: usize) -> bool {
    let nv = m.ctx.nvars();
    let s = GradedModule::free(&m.ctx, &[0]);
    let d = m.dim().unwrap();
    (0..d).all(|j| ext(nv - j, m, &s).module.dim().map_or(true, |e| (e as i64) <= j as i64 - t as i64))
}

fn natural(r: &Ring, a: &[&str], b: &[&str]) -> ModuleMap {
    ModuleMap::new(cyclic(r, a), cyclic(r, b), Matrix::identity(&[0]), 0).unwrap()
}

fn run_cli(args: &[&str]) -> (Value, i32) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let report = serde_json::from_slice(&out.stdout).unwrap_or_else(|_| panic!("no report for {args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    (report, code)
}

fn gallery(name: &str) -> (Value, i32) {
    run_cli(&["gallery", name])
}

fn op<'a>(report: &'a Value, call: &str) -> &'a Value {
    let o = report["operations"].as_array().unwrap().iter().find(|o| o["call"] == call).unwrap_or_else(|| panic!("no op {call}"));
    assert_eq!(o["status"], "ok", "{call}: {}", o["error"]);
    &o["result"]
}

fn strings(v: &Value) -> Vec<String> {
    let mut out: Vec<String> = v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect();
    out.sort();
    out
}

// Criterion 1.

fn c1_groebner() -> Result<String, String> {
    // (p, vars, generators, hand-derived reduced basis)
    let fixtures: [(u32, &[&str], &[&str], &[&str]); 10] = [
        (7, &["x", "y"], &["x^2-y", "y^2-x"], &["x^2-y", "y^2-x"]),
        (P, &["x"], &["x^3", "x"], &["x"]),
        (P, &["x", "y"], &["x^2", "x*y"], &["x^2", "x*y"]),
        (101, &["x", "y"], &["x-y", "x+y"], &["x", "y"]),
        (P, &["x", "y"], &["x^2-y^2", "x*y"], &["x^2-y^2", "x*y", "y^3"]),
        (P, &["x", "y", "z", "w"], &CUBIC, &["y^2-x*z", "y*z-x*w", "z^2-y*w"]),
        (P, &["x", "y", "z"], &["x*y", "y*z", "x*z"], &["x*y", "y*z", "x*z"]),
        (7, &["x", "y"], &["2*x+4*y"], &["x+2*y"]),
        (101, &["x", "y", "z"], &["x", "x+y", "x+y+z"], &["x", "y", "z"]),
        (P, &["x", "y", "z"], &["x^2", "y^2", "x*y-z^2"], &["x^2", "y^2", "x*y-z^2", "x*z^2", "y*z^2", "z^4"]),
    ];
    for (idx, (p, vars, gens, expected)) in fixtures.iter().enumerate() {
        let r = ring(*p, vars);
        let gb = ideal_gb(&r, &polys(&r, gens));
        let got = shown(&r, &gb);
        ensure(got == sorted(expected), || format!("fixture {idx}: got {got:?}, expected {expected:?}"))?;
        let emitted = GroebnerBasis { field: r.field, gens: gb.iter().map(|g| g.to_vec()).collect(), shifts: vec![0], reduced: true };
        ensure(satisfies_buchberger_criterion(&r, &emitted), || format!("fixture {idx}: Buchberger criterion fails"))?;
    }
    Ok("10/10 fixtures".into())
}

// Criterion 2.

fn c2_classical() -> Result<String, String> {
    let (r, _) = gallery("univariate-link");
    let link = op(&r, "link(C, M)");
    ensure(strings(&link["annihilator_gb"]) == sorted(&["x^2"]), || format!("univariate annihilator {}", link["annihilator_gb"]))?;
    ensure(link["annihilator_gb"] == link["colon"], || "univariate colon differs".into())?;
    let dl = op(&r, "double_link(C, M)");
    ensure(strings(&dl["second_annihilator"]) == sorted(&["x"]), || format!("univariate double link {}", dl["second_annihilator"]))?;

    let (r, _) = gallery("twisted-cubic");
    let link = op(&r, "link(C, M)");
    ensure(strings(&link["annihilator_gb"]) == sorted(&["y", "z"]), || format!("cubic annihilator {}", link["annihilator_gb"]))?;
    ensure(strings(&op(&r, "colon(C, I)")["colon"]) == sorted(&["y", "z"]), || "cubic colon".into())?;
    let cl = op(&r, "cyclic_link(I, C)");
    ensure(cl["annihilator"] == cl["colon"], || "cyclic_link annihilator and colon differ".into())?;
    let dl = op(&r, "double_link(C, M)");
    let cubic_gb = sorted(&["y^2-x*z", "y*z-x*w", "z^2-y*w"]);
    ensure(strings(&dl["second_annihilator"]) == cubic_gb, || format!("cubic double link {}", dl["second_annihilator"]))?;
    Ok("annihilators equal colon ideals; double links return the original ideals".into())
}

// Criteria 3 and 4 share their instances.

struct LinkCase {
    label: &'static str,
    epi: ReflexiveEpi,
    /// Known by hand from a primary decomposition.
    unmixed: bool,
}

fn link_cases() -> Vec<LinkCase> {
    let case = |label, r: &Ring, k: &GradedModule, c: &[&str], i: &[&str], unmixed| LinkCase {
        label,
        epi: ReflexiveEpi::cyclic(r, &polys(r, c), &polys(r, i), k, CategoryTag::Pn, 4).unwrap(),
        unmixed,
    };
    let r1 = ring(P, &["x"]);
    let r2 = ring(P, &["x", "y"]);
    let r3 = ring(P, &["x", "y", "z"]);
    let r4 = ring(P, &["x", "y", "z", "w"]);
    let sg = qring(P, &["x", "y", "z"], &SEMIGROUP);
    let free = |r: &Ring| GradedModule::free(r, &[0]);
    let w = canonical_module(&sg).unwrap();
    vec![
        case("univariate", &r1, &free(&r1), &["x^3"], &["x"], true),
        case("twisted cubic", &r4, &free(&r4), &CUBIC_CI, &CUBIC, true),
        case("mixed (x^2,xy)", &r2, &free(&r2), &["x^2"], &["x^2", "x*y"], false),
        case("semigroup R/(x), K = omega", &sg, &w, &["x^2"], &["x"], true),
        case("skew lines", &r4, &free(&r4), &SKEW_CI, &SKEW, true),
        case("residual line", &r4, &free(&r4), &CUBIC_CI, &["y", "z"], true),
        case("mixed (xy,xz)", &r3, &free(&r3), &["x*y"], &["x*y", "x*z"], false),
        case("skew lines, second pair", &r4, &free(&r4), &["x*y", "z*w"], &["x*y", "x*z", "y*w", "z*w"], true),
    ]
}

fn c3_criterion() -> Result<String, String> {
    let cases = link_cases();
    let mut agree = 0;
    for c in &cases {
        let linked = is_linked_by(&c.epi).map_err(|e| format!("{}: {e}", c.label))?;
        let ehv = ehv_unmixed(&c.epi.phi.target);
        ensure(ehv == c.unmixed, || format!("{}: unmixedness oracle disagrees with the decomposition", c.label))?;
        if linked == c.unmixed {
            agree += 1;
        }
    }
    ensure(agree == cases.len(), || format!("{agree}/{} agree", cases.len()))?;
    Ok(format!("{agree}/{} agree", cases.len()))
}

fn c4_link_output() -> Result<String, String> {
    let cases = link_cases();
    let mut kernel_checks = 0;
    for c in &cases {
        let n = link_operator(&c.epi).map_err(|e| format!("{}: {e}", c.label))?.linked_module;
        ensure(!n.is_zero() && ehv_unmixed(&n), || format!("{}: link output is not unmixed", c.label))?;
        if is_linked_by(&c.epi).unwrap() {
            let (ker, _) = c.epi.phi.kernel();
            let d = ext(c.epi.n, &n, &c.epi.k).module;
            ensure(hf(&ker, HF_WINDOW) == hf(&d, HF_WINDOW), || format!("{}: HF of ker and Ext^n(N,K) differ", c.label))?;
            ensure(ker.annihilator() == d.annihilator(), || format!("{}: annihilators differ", c.label))?;
            kernel_checks += 1;
        }
    }
    Ok(format!("{} outputs unmixed; {kernel_checks} kernel comparisons", cases.len()))
}

// Criterion 5.

fn c5_perfection() -> Result<String, String> {
    let (r, _) = gallery("even-liaison-ext");
    let mut ends = 0;
    for call in ["walk(M, C1, C2)", "walk(S, D1, D2)"] {
        let steps = op(&r, call)["steps"].as_array().unwrap().clone();
        let labels: Vec<&str> = steps.iter().map(|s| s["gk_perfect"]["verdict"].as_str().unwrap()).collect();
        ensure(labels.windows(2).all(|w| w[0] == w[1]), || format!("{call}: {labels:?}"))?;
        ends += labels.len() - 1;
    }
    Ok(format!("{ends} links, verdict unchanged across each"))
}

// Criterion 6.

fn c6_even_liaison() -> Result<String, String> {
    let s = ring(P, &["x", "y", "z", "w"]);
    let k = GradedModule::free(&s, &[0]);
    let bound = s.nvars() + 1;
    let cyc = |c: &[&str], i: &[Poly]| ReflexiveEpi::cyclic(&s, &polys(&s, c), i, &k, CategoryTag::Pn, bound).unwrap();
    let mut compared = 0;
    for (start, c1, c2) in [(&CUBIC[..], &CUBIC_CI[..], &["x*y", "z*w"][..]), (&SKEW[..], &SKEW_CI[..], &["x*y", "z*w"][..])] {
        let i0 = polys(&s, start);
        let a = cyc(c1, &i0);
        let mid = modlink::groebner::colon(&s, &polys(&s, c1), &i0);
        let b = cyc(c2, &mid);
        let w = liaison_walk(&[a, b], bound, HF_WINDOW).map_err(|e| e.to_string())?;
        let (m0, m2) = (normalized(&w.modules[0]), normalized(&w.modules[2]));
        for i in 3..=bound {
            let (e0, e2) = (ext(i, &m0, &k).module, ext(i, &m2, &k).module);
            ensure(hf(&e0, HF_WINDOW) == hf(&e2, HF_WINDOW), || format!("Ext^{i} differs for {start:?}"))?;
            compared += 1;
        }
        let (p0, p2) = (pd(&m0), pd(&m2));
        ensure(p0 == p2 && matches!(p0, Pd::Finite(_)), || format!("pd {p0:?} vs {p2:?}"))?;
    }
    Ok(format!("{compared} Ext comparisons and 2 pd comparisons"))
}

// Criterion 7.

fn c7_schenzel() -> Result<String, String> {
    let (r, code) = gallery("schenzel");
    ensure(code == 0, || format!("exit code {code}"))?;
    let cm = op(&r, "schenzel(M, N, 1..2)");
    let reports = cm["reports"].as_array().unwrap();
    ensure(reports.len() == 2, || "CM pair should cover t = 1..2".into())?;
    for rep in reports {
        ensure(rep["serre"]["verdict"] == "holds" && rep["vanishing"]["verdict"] == "holds", || format!("CM pair: {rep}"))?;
    }
    let ncm = op(&r, "schenzel(S, L, 1..2)");
    ensure(ncm["first_failing_t"] == 2, || format!("non-CM first failure {}", ncm["first_failing_t"]))?;
    let t2 = &ncm["reports"][1];
    ensure(t2["serre"]["verdict"] == "fails" && t2["vanishing"]["verdict"] == "fails", || format!("non-CM t = 2: {t2}"))?;

    let s = ring(P, &["x", "y", "z", "w"]);
    let oracle_first = |gens: &[&str]| (1..=2).find(|&t| !serre_by_ext_dims(&cyclic(&s, gens), t));
    ensure(oracle_first(&CUBIC).is_none(), || "oracle: cubic fails Serre".into())?;
    ensure(oracle_first(&SKEW) == Some(2), || "oracle: skew lines minimal t".into())?;
    Ok("CM pair holds for t = 1..2; non-CM pair fails at t = 2 on both sides".into())
}

// Criterion 8.

fn c8_duality() -> Result<String, String> {
    let s = ring(P, &["x", "y", "z", "w"]);
    let k = GradedModule::free(&s, &[0]);
    let pair = |c: &[&str], i: &[&str]| {
        let e = ReflexiveEpi::cyclic(&s, &polys(&s, c), &polys(&s, i), &k, CategoryTag::Pn, 4).unwrap();
        let n = link_operator(&e).unwrap().linked_module;
        (e.phi.target, n)
    };
    let (m, n) = pair(&SKEW_CI, &SKEW);
    let d = m.dim().unwrap();
    let a = local_cohomology_hf(&m, 1, -20..=20);
    let b = local_cohomology_hf(&n, d - 1, -20..=20);
    let (sa, sb) = (a.support.clone().ok_or("H^1(M) not finite length")?, b.support.clone().ok_or("H^1(N) not finite length")?);
    ensure(!sa.is_empty() && !sb.is_empty(), || "expected nonzero H^1 on both sides".into())?;
    let sigma = -sb.keys().next_back().unwrap() - sa.keys().next().unwrap();
    let mut matched = 0;
    for j in HF_WINDOW {
        let (here, dual) = (sa.get(&j).copied().unwrap_or(0), sb.get(&(-j - sigma)).copied().unwrap_or(0));
        ensure(here == dual, || format!("degree {j}: {here} vs {dual}"))?;
        matched += 1;
    }
    let flipped: BTreeMap<i32, i64> = sb.iter().map(|(&j, &v)| (-j - sigma, v)).collect();
    ensure(flipped == sa, || format!("supports {sa:?} vs {flipped:?}"))?;
    ensure(duality_check(&m, &n, 1..=1).unwrap().verdict == Verdict::Holds, || "duality_check disagrees".into())?;

    let (m, n) = pair(&CUBIC_CI, &CUBIC);
    for (x, y) in [(&m, 1usize), (&n, 1usize)] {
        ensure(local_cohomology_hf(x, y, HF_WINDOW).is_zero_on_window(), || "CM pair has nonzero H^1".into())?;
    }
    Ok(format!("sigma = {sigma}; {matched} degrees matched; CM pair zero"))
}

// Criterion 9.

fn c9_depth_formula() -> Result<String, String> {
    let s = ring(P, &["x", "y", "z", "w"]);
    let k = GradedModule::free(&s, &[0]);
    let e = ReflexiveEpi::cyclic(&s, &polys(&s, &CUBIC_CI), &polys(&s, &CUBIC), &k, CategoryTag::GKPn, 4).unwrap();
    let m = &e.phi.target;
    let n = link_operator(&e).unwrap().linked_module;
    let (dm, dn, dim, de) = (depth_by_ext(m), depth_by_ext(&n), m.dim().unwrap(), depth_by_ext(&ext(e.n, m, &k).module));
    ensure(dm + dn == dim + de, || format!("{dm} + {dn} != {dim} + {de}"))?;
    let (r, _) = gallery("depth-formula");
    let cli = op(&r, "depth_formula(C, M)");
    let got = [&cli["depth_m"], &cli["depth_n"], &cli["dim_m"], &cli["depth_ext"]].map(|v| v.as_u64().unwrap() as usize);
    ensure(got == [dm, dn, dim, de], || format!("CLI reports {got:?}, oracle {:?}", [dm, dn, dim, de]))?;
    Ok(format!("{dm} + {dn} = {dim} + {de}"))
}

// Criterion 10.

fn c10_canonical() -> Result<String, String> {
    let sg = qring(P, &["x", "y", "z"], &SEMIGROUP);
    let w = canonical_module(&sg).unwrap();
    let cert = is_semidualizing(&w, 5);
    ensure(cert.verdict == Verdict::Holds && cert.ext_vanishing.len() == 5, || format!("semidualizing: {:?}", cert.verdict))?;
    let r = GradedModule::free(&sg, &[0]);
    let dr = depth_by_ext(&r);
    let mu = bass_numbers(&r, dr);
    ensure(mu[dr] == 2 && w.ngens() == 2, || format!("type {} with {} generators", mu[dr], w.ngens()))?;

    let h = qring(P, &["x", "y"], &["x*y"]);
    let wh = canonical_module(&h).unwrap();
    let rh = GradedModule::free(&h, &[0]);
    let faithful = wh.annihilator() == ideal_gb(&h, &[]);
    ensure(wh.ngens() == 1 && faithful && same_hf_up_to_shift(&wh, &rh, -4..=6), || "hypersurface: omega is not R up to shift".into())?;
    Ok(format!("B = 5 holds; type {}; hypersurface omega cyclic and faithful", mu[dr]))
}

// Criterion 11.

fn c11_foxby() -> Result<String, String> {
    let sg = qring(P, &["x", "y", "z"], &SEMIGROUP);
    let w = canonical_module(&sg).unwrap();
    let b = 3;
    let e = ReflexiveEpi::certify(natural(&sg, &["x^2"], &["x"]), &w, CategoryTag::Pn, b).unwrap();
    ensure(is_linked_by(&e).unwrap(), || "M is not linked".into())?;
    ensure(class_member(FoxbyClass::Auslander, &e.phi.source, &w, b).unwrap().verdict.holds(), || "no Auslander certificate".into())?;
    let fwd = adjoint_transfer(&e, &w, b).map_err(|x| x.to_string())?;
    ensure(is_colinked_by(&fwd.epi).unwrap(), || "M tensor K is not colinked".into())?;
    ensure(mu(&e.phi.target, &w).unwrap().is_iso() && fwd.round_trip_iso, || "round trip is not an isomorphism".into())?;

    let coepi = |a: &[&str], c: &[&str]| {
        let f = tensor_induced(&natural(&sg, a, c), &w).unwrap();
        CoreflexiveEpi::certify(f, &w, CoTag::PKn, b).unwrap()
    };
    let first = coepi(&["x^3"], &["x^2"]);
    let start = first.phi.target.clone();
    let n1 = colink_operator(&first).unwrap().colinked_module;
    let second = coepi(&["x^3"], &["x"]);
    let t2 = &second.phi.target;
    ensure(n1.annihilator() == t2.annihilator() && same_hf_up_to_shift(&n1, t2, -4..=6), || "walk does not chain".into())?;
    let n2 = colink_operator(&second).unwrap().colinked_module;
    let (p0, p2) = (pk_dimension(&start, &w, b).unwrap(), pk_dimension(&n2, &w, b).unwrap());
    ensure(p0.verdict.holds() && p2.verdict.holds() && p0.value == p2.value, || format!("pk dims {:?} vs {:?}", p0.value, p2.value))?;
    Ok(format!("colinked, round trip iso, P_K-dimension {:?} at both even ends", p0.value.unwrap()))
}

// Criterion 12.

fn c12_consistency() -> Result<String, String> {
    let mut s_modules: Vec<GradedModule> = Vec::new();
    for c in link_cases() {
        s_modules.push(c.epi.phi.target.restrict_to_ambient());
        s_modules.push(link_operator(&c.epi).unwrap().linked_module.restrict_to_ambient());
    }
    let sg = qring(P, &["x", "y", "z"], &SEMIGROUP);
    s_modules.push(canonical_module(&sg).unwrap().restrict_to_ambient());
    s_modules.push(GradedModule::free(&sg, &[0]).restrict_to_ambient());
    let mut ab = 0;
    for m in &s_modules {
        let nv = m.ctx.nvars();
        match pd(m) {
            Pd::Finite(p) => ensure(p + depth_by_ext(m) == nv, || format!("Auslander-Buchsbaum fails for {:?}", m.gen_degs()))?,
            Pd::Infinite => return Err("infinite pd over a polynomial ring".into()),
        }
        ensure(depth(m) == Some(depth_by_ext(m)), || "depth disagrees with Ext(k, M)".into())?;
        ab += 1;
    }

    let mut band = 0;
    for m in &s_modules {
        let (t, d) = (depth_by_ext(m), m.dim().unwrap());
        for i in 0..=m.ctx.nvars() {
            let zero = local_cohomology_hf(m, i, -8..=8).is_zero_on_window() && modlink::cohomology::local_cohomology_vanishes(m, i);
            let expected_zero = i < t || i > d;
            ensure(!expected_zero || zero, || format!("H^{i} nonzero outside [{t}, {d}]"))?;
            ensure(!(i == t || i == d) || !modlink::cohomology::local_cohomology_vanishes(m, i), || format!("H^{i} vanishes at an end of [{t}, {d}]"))?;
            band += 1;
        }
    }

    let mut functorial = 0;
    let r = ring(P, &["x", "y"]);
    let sgw = canonical_module(&sg).unwrap();
    let chains: [(&Ring, [&[&str]; 3], GradedModule); 2] = [
        (&r, [&["x^2", "y^2"], &["x^2", "y"], &["x", "y"]], GradedModule::free(&r, &[0])),
        (&sg, [&["x^3"], &["x^2"], &["x"]], sgw),
    ];
    for (ctx, [a, b, c], n) in chains {
        let f = natural(ctx, a, b);
        let g = natural(ctx, b, c);
        for i in 0..3 {
            let id = ext_induced(i, &ModuleMap::identity(&f.source), &n).unwrap();
            ensure(id.equals(&ModuleMap::identity(&id.source)), || format!("Ext^{i}(id) is not id"))?;
            let gf = ext_induced(i, &f.then(&g), &n).unwrap();
            let comp = ext_induced(i, &g, &n).unwrap().then(&ext_induced(i, &f, &n).unwrap());
            ensure(gf.equals(&comp), || format!("Ext^{i} is not functorial"))?;
            functorial += 2;
        }
    }

    let mut violations = 0;
    for g in modlink_cli::gallery_names() {
        let (rep, _) = gallery(g);
        violations += rep["summary"]["consistency_violations"].as_u64().unwrap();
    }
    ensure(violations == 0, || format!("{violations} violations reported by galleries"))?;
    Ok(format!("{ab} Auslander-Buchsbaum, {band} band, {functorial} functoriality checks; 0 gallery violations"))
}

// Criterion 13.

fn signature(report: &Value) -> Vec<String> {
    let mut out = vec![format!("exit {}", report["exit_code"])];
    for o in report["operations"].as_array().unwrap() {
        out.push(format!("{} {} {} {}", o["call"], o["status"], o["verdict"]["verdict"], o["consistency"]["violations"]));
    }
    out
}

fn c13_characteristics() -> Result<String, String> {
    let mut n = 0;
    for g in modlink_cli::gallery_names() {
        let (a, ca) = run_cli(&["gallery", g, "--char", "101"]);
        let (b, cb) = run_cli(&["gallery", g, "--char", "32003"]);
        ensure(ca == cb && signature(&a) == signature(&b), || format!("{g}: verdicts differ between p = 101 and p = 32003"))?;
        ensure(a["ring"]["char"] == 101 && b["ring"]["char"] == 32003, || "char override ignored".into())?;
        n += signature(&a).len();
    }
    Ok(format!("{n} verdict lines identical at p = 101 and p = 32003"))
}

fn guarded(f: Check) -> Result<String, String> {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    })
}

fn main() {
    let criteria: [(&str, Check, Option<Duration>); 12] = [
        ("Groebner kernel oracle", c1_groebner, Some(BUDGET_GROEBNER)),
        ("classical linkage agreement", c2_classical, Some(BUDGET_CLASSICAL)),
        ("linkage criterion vs unmixedness", c3_criterion, None),
        ("link output unmixed, kernel vs Ext^n(N,K)", c4_link_output, None),
        ("G_K-perfection preserved along walks", c5_perfection, None),
        ("even liaison invariance", c6_even_liaison, None),
        ("Serre condition vs local cohomology", c7_schenzel, None),
        ("local cohomology duality", c8_duality, None),
        ("depth formula", c9_depth_formula, None),
        ("canonical and semidualizing modules", c10_canonical, None),
        ("Foxby and adjoint equivalence", c11_foxby, None),
        ("homological consistency", c12_consistency, None),
    ];
    let start = Instant::now();
    let mut failed = 0;
    let mut report = |idx: usize, name: &str, r: Result<String, String>, el: Duration| match r {
        Ok(d) => println!("criterion {idx:>2} PASS  {name} ({:.2}s): {d}", el.as_secs_f64()),
        Err(e) => {
            failed += 1;
            println!("criterion {idx:>2} FAIL  {name} ({:.2}s): {e}", el.as_secs_f64());
        }
    };
    for (i, (name, f, budget)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let r = guarded(f);
        let el = t.elapsed();
        let r = match (r, budget) {
            (Ok(_), Some(b)) if el > b => Err(format!("took {el:?}, budget {b:?}")),
            (r, _) => r,
        };
        report(i + 1, name, r, el);
    }
    let r = guarded(c13_characteristics).and_then(|d| {
        let total = start.elapsed();
        ensure(total <= BUDGET_TOTAL, || format!("suite took {total:?}, budget {BUDGET_TOTAL:?}"))?;
        Ok(format!("{d}; whole suite {:.2}s", total.as_secs_f64()))
    });
    report(13, "characteristic independence and runtime", r, start.elapsed());
    if failed > 0 {
        println!("{failed} acceptance check(s) failed");
        std::process::exit(1);
    }
}

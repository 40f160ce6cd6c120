//! Building the objects of a spec and executing its operations.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use modlink::cohomology::{
    bass_numbers, duality_check, grothendieck_band_ok, is_generalized_cm, is_unmixed, local_cohomology_hf, schenzel_check,
    serre_st_proxy,
};
use modlink::colinkage::{
    adjoint_transfer, adjoint_transfer_back, class_member, colink_operator, foxby_transform, is_colinked_by, mu, nu, pk_dimension,
    CoTag, CoreflexiveEpi, Direction, FoxbyClass,
};
use modlink::groebner::{colon, ideal_gb};
use modlink::homalg::{ext, free_resolution, tor};
use modlink::linkage::{
    canonical_module, change_of_rings, cyclic_link, double_link_check, horizontal_link, is_gk_perfect, is_horizontally_linked,
    is_linked_by, is_perfect, is_semidualizing, liaison_walk, link_operator, regular_sequence_in, same_hf_up_to_shift,
    CategoryTag, ReflexiveEpi,
};
use modlink::modules::{depth, grade, hom_module, invariants, pd, tensor, Pd};
use modlink::ring::{FreeVec, Matrix, Poly};
use modlink::{make_ring, par, polynomial_ring, GradedModule, ModuleMap, Ring, Verdict};
use serde_json::{json, Value};

use crate::spec::{parse_window, Call, ExperimentSpec, KChoice};
use crate::{CliError, SCHEMA_VERSION};

/// Command-line overrides applied on top of a parsed spec.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub bound: Option<usize>,
    pub window: Option<RangeInclusive<i32>>,
    pub characteristic: Option<u32>,
}

impl Overrides {
    pub fn apply(&self, spec: &mut ExperimentSpec) {
        if let Some(b) = self.bound {
            spec.bound = b;
        }
        if let Some(w) = &self.window {
            spec.window = w.clone();
        }
        if let Some(p) = self.characteristic {
            spec.characteristic = p;
        }
    }
}

#[derive(Clone)]
enum Obj {
    Ideal(Vec<Poly>),
    Module { m: GradedModule, ideal: Option<Vec<Poly>> },
}

/// A spec with its ring, named objects and K built.
pub struct Prepared {
    pub spec: ExperimentSpec,
    pub ring: Ring,
    pub k: GradedModule,
    objects: BTreeMap<String, Obj>,
}

pub struct Report {
    pub json: Value,
    pub exit_code: i32,
}

impl Report {
    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("report serializes") + "\n"
    }
}

fn at_line(line: usize, e: modlink::Error) -> CliError {
    match e {
        modlink::Error::PolySyntax { col, msg } => CliError::Syntax { line, col, msg },
        e => CliError::Algebra(e),
    }
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::BadArgument(msg.into())
}

fn canonical(ring: &Ring) -> Result<GradedModule, CliError> {
    canonical_module(ring).map_err(|e| match e {
        modlink::Error::NotCohenMacaulay => CliError::NonCMForCanonical,
        e => CliError::Algebra(e),
    })
}

pub fn prepare(spec: &ExperimentSpec) -> Result<Prepared, CliError> {
    let names: Vec<&str> = spec.vars.iter().map(String::as_str).collect();
    let s = polynomial_ring(spec.characteristic, &names)?;
    let defs = spec.defining.iter().map(|d| s.parse_poly(d).map_err(|e| at_line(0, e))).collect::<Result<Vec<_>, _>>()?;
    let ring = make_ring(spec.characteristic, &names, &defs)?;
    let mut p = Prepared { spec: spec.clone(), ring: ring.clone(), k: GradedModule::free(&ring, &[0]), objects: BTreeMap::new() };
    if spec.k == KChoice::Canonical {
        p.k = canonical(&ring)?;
    }
    for (name, call) in &spec.objects {
        let obj = p.build(call)?;
        p.objects.insert(name.clone(), obj);
        if spec.k == KChoice::Explicit(name.clone()) {
            p.k = p.module(name)?;
        }
    }
    Ok(p)
}

/// Builds and runs a parsed spec.
pub fn run_spec(spec: &ExperimentSpec) -> Result<Report, CliError> {
    let p = prepare(spec)?;
    Ok(p.run())
}

struct Outcome {
    result: Value,
    verdict: Option<Verdict>,
    checks: Vec<(String, bool)>,
}

impl Outcome {
    fn plain(result: Value) -> Outcome {
        Outcome { result, verdict: None, checks: Vec::new() }
    }

    fn judged(result: Value, v: Verdict) -> Outcome {
        Outcome { result, verdict: Some(v), checks: Vec::new() }
    }

    fn check(mut self, name: &str, ok: bool) -> Outcome {
        self.checks.push((name.to_string(), ok));
        self
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn tag_of(s: &str) -> Result<CategoryTag, CliError> {
    match s.to_ascii_lowercase().as_str() {
        "pn" => Ok(CategoryTag::Pn),
        "gkpn" => Ok(CategoryTag::GKPn),
        "cmn" => Ok(CategoryTag::CMn),
        "refnk" => Ok(CategoryTag::RefnK),
        _ => Err(bad(format!("unknown category `{s}`"))),
    }
}

/// First `i` with `Ext^i_S(k, M) != 0` over the ambient polynomial ring.
fn depth_by_ext(m: &GradedModule) -> Option<usize> {
    let s = m.restrict_to_ambient();
    let vars: Vec<Poly> = (0..s.ctx.nvars()).map(Poly::var).collect();
    let k = GradedModule::quotient(&s.ctx, &vars);
    (0..=s.ctx.nvars()).find(|&i| !ext(i, &k, &s).module.is_zero())
}

/// `pd_S M + depth M = dim S`, with depth computed independently from `Ext(k, M)`.
pub fn auslander_buchsbaum_holds(m: &GradedModule) -> bool {
    if m.is_zero() {
        return true;
    }
    let s = m.restrict_to_ambient();
    match (pd(&s), depth_by_ext(m)) {
        (Pd::Finite(p), Some(d)) => p + d == s.ctx.nvars(),
        _ => false,
    }
}

impl Prepared {
    fn strs(&self, ps: &[Poly]) -> Vec<String> {
        ps.iter().map(|p| self.ring.fmt_poly(p)).collect()
    }

    fn polys(&self, args: &[String], line: usize) -> Result<Vec<Poly>, CliError> {
        args.iter().filter(|a| !a.is_empty()).map(|a| self.ring.parse_poly(a).map_err(|e| at_line(line, e))).collect()
    }

    fn build(&self, call: &Call) -> Result<Obj, CliError> {
        let a = &call.args;
        let need = |n: usize| {
            if a.len() < n {
                Err(CliError::Syntax { line: call.line, col: 1, msg: format!("{} needs {n} arguments", call.name) })
            } else {
                Ok(())
            }
        };
        let module = |m: GradedModule| Obj::Module { m, ideal: None };
        Ok(match call.name.as_str() {
            "ideal" => Obj::Ideal(self.polys(a, call.line)?),
            "quotient" => {
                let ideal = match a.as_slice() {
                    [one] if self.objects.contains_key(one.as_str()) => self.ideal(one)?,
                    _ => self.polys(a, call.line)?,
                };
                Obj::Module { m: GradedModule::quotient(&self.ring, &ideal), ideal: Some(ideal) }
            }
            "free" => {
                let degs = a.iter().filter(|s| !s.is_empty()).map(|s| self.int(s)).collect::<Result<Vec<i32>, _>>()?;
                let degs = if degs.is_empty() { vec![0] } else { degs };
                module(GradedModule::free(&self.ring, &degs))
            }
            "canonical" => module(canonical(&self.ring)?),
            "tensor" => {
                need(2)?;
                module(tensor(&self.module(&a[0])?, &self.module(&a[1])?)?)
            }
            "hom" => {
                need(2)?;
                module(hom_module(&self.module(&a[0])?, &self.module(&a[1])?)?.minimize().module)
            }
            "ext" => {
                need(3)?;
                module(ext(self.int::<usize>(&a[0])?, &self.module(&a[1])?, &self.module(&a[2])?).module.minimize().module)
            }
            "sum" => {
                need(2)?;
                module(self.module(&a[0])?.direct_sum(&self.module(&a[1])?).module)
            }
            "twist" => {
                need(2)?;
                module(self.module(&a[0])?.twist(self.int(&a[1])?))
            }
            "link" => {
                need(2)?;
                let e = self.epi(&a[0], &a[1], a.get(2))?;
                module(link_operator(&e)?.linked_module)
            }
            other => return Err(CliError::Syntax { line: call.line, col: 1, msg: format!("unknown object kind `{other}`") }),
        })
    }

    fn int<T: std::str::FromStr>(&self, s: &str) -> Result<T, CliError> {
        s.trim().parse().map_err(|_| bad(format!("expected an integer, found `{s}`")))
    }

    fn module(&self, name: &str) -> Result<GradedModule, CliError> {
        match name.trim() {
            "K" => Ok(self.k.clone()),
            "R" => Ok(GradedModule::free(&self.ring, &[0])),
            n => match self.objects.get(n) {
                Some(Obj::Module { m, .. }) => Ok(m.clone()),
                Some(Obj::Ideal(_)) => Err(bad(format!("`{n}` is an ideal; wrap it in quotient()"))),
                None => Err(CliError::UnknownName(n.to_string())),
            },
        }
    }

    fn ideal(&self, name: &str) -> Result<Vec<Poly>, CliError> {
        match self.objects.get(name.trim()) {
            Some(Obj::Ideal(i)) => Ok(i.clone()),
            Some(Obj::Module { ideal: Some(i), .. }) => Ok(i.clone()),
            Some(Obj::Module { m, .. }) => Ok(m.annihilator()),
            None => Err(CliError::UnknownName(name.trim().to_string())),
        }
    }

    fn epi_map(&self, x: &str, m: &str) -> Result<ModuleMap, CliError> {
        let (x, m) = (self.module(x)?, self.module(m)?);
        if x.ngens() != m.ngens() {
            return Err(bad("source and target need matching generators"));
        }
        let cols = (0..x.ngens()).map(|i| FreeVec::unit(i as u32)).collect();
        let mat = Matrix::new(m.gen_degs().to_vec(), cols, x.gen_degs().to_vec());
        Ok(ModuleMap::new(x, m, mat, 0)?)
    }

    /// The generator-matching epimorphism `X ↠ M`.
    fn epi(&self, x: &str, m: &str, tag: Option<&String>) -> Result<ReflexiveEpi, CliError> {
        let tag = tag.map(|t| tag_of(t)).transpose()?.unwrap_or(CategoryTag::Pn);
        Ok(ReflexiveEpi::certify(self.epi_map(x, m)?, &self.k, tag, self.spec.bound)?)
    }

    fn window(&self) -> RangeInclusive<i32> {
        self.spec.window.clone()
    }

    fn hf(&self, m: &GradedModule) -> Value {
        to_value(&m.hf_table(self.window()))
    }

    fn k_is_free(&self) -> bool {
        self.spec.k == KChoice::Trivial
    }

    fn exec(&self, call: &Call) -> Result<Outcome, CliError> {
        let a = &call.args;
        if a.len() < min_args(&call.name) {
            return Err(bad(format!("{} needs {} arguments", call.name, min_args(&call.name))));
        }
        let bound = self.spec.bound;
        let out = match call.name.as_str() {
            "gb" => Outcome::plain(json!({ "gb": self.strs(&ideal_gb(&self.ring, &self.ideal(&a[0])?)) })),
            "colon" => {
                let c = colon(&self.ring, &self.ideal(&a[0])?, &self.ideal(&a[1])?);
                Outcome::plain(json!({ "colon": self.strs(&c) }))
            }
            "invariants" => {
                let m = self.module(&a[0])?;
                Outcome::plain(to_value(&invariants(&m))).check("auslander_buchsbaum", auslander_buchsbaum_holds(&m))
            }
            "betti" => {
                let m = self.module(&a[0])?;
                let len = if self.ring.is_polynomial_ring() { self.ring.nvars() + 1 } else { bound };
                let res = free_resolution(&m, len);
                let b = res.betti();
                Outcome::plain(json!({
                    "betti": b.to_json(),
                    "rendered": b.render(),
                    "complete": res.complete,
                    "resolution_length": len,
                }))
            }
            "hf" => {
                let m = self.module(&a[0])?;
                Outcome::plain(json!({ "hf": self.hf(&m), "dim": m.dim(), "length": m.length() }))
            }
            "ext" | "tor" => {
                let i: usize = self.int(&a[0])?;
                let (m, n) = (self.module(&a[1])?, self.module(&a[2])?);
                let e = if call.name == "ext" { ext(i, &m, &n) } else { tor(i, &m, &n) };
                Outcome::plain(json!({
                    "index": i,
                    "is_zero": e.module.is_zero(),
                    "hf": self.hf(&e.module),
                    "resolution_length": e.resolution_length,
                }))
            }
            "perfect" => {
                let v = is_perfect(&self.module(&a[0])?)?;
                Outcome::judged(json!({}), v)
            }
            "gk_perfect" => {
                let v = is_gk_perfect(&self.module(&a[0])?, &self.k, bound)?;
                Outcome::judged(json!({}), v)
            }
            "semidualizing" => {
                let k = match a.first().filter(|s| !s.is_empty()) {
                    Some(n) => self.module(n)?,
                    None => self.k.clone(),
                };
                let cert = is_semidualizing(&k, bound);
                Outcome::judged(to_value(&cert), cert.verdict.clone())
            }
            "link" => self.op_link(a)?,
            "is_linked" => {
                let e = self.epi(&a[0], &a[1], a.get(2))?;
                Outcome::plain(json!({ "linked": is_linked_by(&e)?, "grade": e.n }))
            }
            "double_link" => {
                let e = self.epi(&a[0], &a[1], a.get(2))?;
                let d = double_link_check(&e, bound)?;
                let back = &d.second.linked_module;
                let target = &e.phi.target;
                let returns = back.annihilator() == target.annihilator() && same_hf_up_to_shift(back, target, self.window());
                let out = Outcome::judged(
                    json!({
                        "first_annihilator": self.strs(&d.first.linked_module.annihilator()),
                        "second_annihilator": self.strs(&back.annihilator()),
                        "returns_original": returns,
                        "note": d.note,
                    }),
                    d.verdict.clone(),
                );
                if d.verdict.holds() {
                    out.check("double_link_returns_original", returns)
                } else {
                    out
                }
            }
            "cyclic_link" => {
                let (i, c) = (self.ideal(&a[0])?, self.ideal(&a[1])?);
                let l = cyclic_link(&self.ring, &i, &c, &self.k)?;
                let out = Outcome::plain(json!({
                    "module": l.module.to_json(),
                    "annihilator": self.strs(&l.annihilator),
                    "colon": self.strs(&l.colon),
                    "agrees_with_colon": l.agrees_with_colon(),
                    "hf": self.hf(&l.module),
                }));
                if self.k_is_free() && self.ring.is_polynomial_ring() {
                    out.check("annihilator_equals_colon", l.agrees_with_colon())
                } else {
                    out
                }
            }
            "self_link" => {
                let m = self.module(&a[0])?;
                let other = match a.get(1) {
                    Some(n) => self.module(n)?,
                    None => m.clone(),
                };
                let n = grade(&other).ok_or(modlink::Error::ZeroModule)?;
                let d = ext(n, &other, &self.k).module;
                let sum = m.direct_sum(&d);
                let e = ReflexiveEpi::certify(sum.proj[0].clone(), &self.k, CategoryTag::GKPn, bound)?;
                let l = link_operator(&e)?.linked_module;
                let same = same_hf_up_to_shift(&l, &other, self.window()) && l.annihilator() == other.annihilator();
                Outcome::plain(json!({
                    "linked": is_linked_by(&e)?,
                    "linked_presentation": l.to_json(),
                    "hf": self.hf(&l),
                    "recovers_second_summand": same,
                }))
                .check("split_link_recovers_summand", same)
            }
            "horizontal" => {
                let m = self.module(&a[0])?;
                let l = horizontal_link(&m)?;
                Outcome::plain(json!({
                    "horizontally_linked": is_horizontally_linked(&m)?,
                    "lambda": l.to_json(),
                    "lambda_hf": self.hf(&l),
                }))
            }
            "regular_sequence" => {
                let x = regular_sequence_in(&self.ring, &self.ideal(&a[0])?, self.int(&a[1])?)?;
                Outcome::plain(json!({ "sequence": self.strs(&x) }))
            }
            "change_of_rings" => {
                let i = self.ideal(&a[0])?;
                let n = match a.get(1) {
                    Some(s) => self.int(s)?,
                    None => grade(&GradedModule::quotient(&self.ring, &i)).ok_or(modlink::Error::ZeroModule)?,
                };
                let x = regular_sequence_in(&self.ring, &i, n)?;
                let (bar, kbar) = change_of_rings(&self.ring, &x, &self.k)?;
                let cert = is_semidualizing(&kbar, bound);
                Outcome::judged(
                    json!({
                        "sequence": self.strs(&x),
                        "defining": bar.defining_strings(),
                        "kbar": kbar.to_json(),
                        "kbar_semidualizing": to_value(&cert),
                    }),
                    cert.verdict,
                )
            }
            "walk" => self.op_walk(a)?,
            "depth_formula" => {
                let e = self.epi(&a[0], &a[1], a.get(2))?;
                let m = &e.phi.target;
                let n_mod = link_operator(&e)?.linked_module;
                let dm = depth(m).ok_or(modlink::Error::ZeroModule)?;
                let dn = depth(&n_mod).ok_or(modlink::Error::ZeroModule)?;
                let dim = m.dim().ok_or(modlink::Error::ZeroModule)?;
                let de = depth(&ext(e.n, m, &self.k).module).ok_or(modlink::Error::ZeroModule)?;
                let v = Verdict::from_bool(dm + dn == dim + de, || format!("{dm} + {dn} != {dim} + {de}"));
                Outcome::judged(json!({ "depth_m": dm, "depth_n": dn, "dim_m": dim, "depth_ext": de, "g": e.n }), v)
            }
            "unmixed" => Outcome::plain(json!({ "unmixed": is_unmixed(&self.module(&a[0])?)? })),
            "local_cohomology" => {
                let m = self.module(&a[0])?;
                let h = local_cohomology_hf(&m, self.int(&a[1])?, self.window());
                Outcome::plain(to_value(&h)).check("grothendieck_band", grothendieck_band_ok(&m))
            }
            "serre" => {
                let v = serre_st_proxy(&self.module(&a[0])?, &self.k, self.int(&a[1])?)?;
                Outcome::judged(json!({}), v)
            }
            "generalized_cm" => Outcome::plain(json!({ "generalized_cm": is_generalized_cm(&self.module(&a[0])?)? })),
            "bass" => {
                let mu = bass_numbers(&self.module(&a[0])?, self.int(&a[1])?);
                Outcome::plain(json!({ "bass_numbers": mu }))
            }
            "schenzel" => {
                let (m, n) = (self.module(&a[0])?, self.module(&a[1])?);
                let ts = match parse_window(&a[2]) {
                    Some(r) => (r.start().max(&1).to_owned() as usize)..=(*r.end() as usize),
                    None => {
                        let t: usize = self.int(&a[2])?;
                        t..=t
                    }
                };
                let ts: Vec<usize> = ts.collect();
                let reports = par::map(&ts, |&t| schenzel_check(&m, &n, &self.k, t));
                let reports = reports.into_iter().collect::<modlink::Result<Vec<_>>>()?;
                let first_failure = reports.iter().find(|r| r.serre.fails()).map(|r| r.t);
                Outcome::plain(json!({ "reports": to_value(&reports), "first_failing_t": first_failure }))
            }
            "duality" => {
                let (m, n) = (self.module(&a[0])?, self.module(&a[1])?);
                let band = parse_window(&a[2]).ok_or_else(|| bad(format!("bad band `{}`", a[2])))?;
                if *band.start() < 0 {
                    return Err(bad("band must be nonnegative"));
                }
                let r = duality_check(&m, &n, (*band.start() as usize)..=(*band.end() as usize))?;
                Outcome::judged(to_value(&r), r.verdict.clone())
            }
            "class" => {
                let class = match a[0].to_ascii_lowercase().as_str() {
                    "auslander" => FoxbyClass::Auslander,
                    "bass" => FoxbyClass::Bass,
                    o => return Err(bad(format!("unknown class `{o}`"))),
                };
                let cert = class_member(class, &self.module(&a[1])?, &self.k, bound)?;
                Outcome::judged(to_value(&cert), cert.verdict.clone())
            }
            "foxby" => {
                let m = self.module(&a[0])?;
                let (t, mu_map) = foxby_transform(Direction::TensorK, &m, &self.k)?;
                let (h, nu_map) = foxby_transform(Direction::HomK, &m, &self.k)?;
                let back = hom_module(&self.k, &t)?;
                Outcome::plain(json!({
                    "mu_iso": mu_map.is_iso(),
                    "nu_iso": nu_map.is_iso(),
                    "tensor_k_hf": self.hf(&t),
                    "hom_k_hf": self.hf(&h),
                    "round_trip_same_hf": same_hf_up_to_shift(&back, &m, self.window()),
                }))
            }
            "pk_dim" => {
                let d = pk_dimension(&self.module(&a[0])?, &self.k, bound)?;
                Outcome::judged(to_value(&d), d.verdict.clone())
            }
            "colink" => {
                let tag = match a.get(2).map(|s| s.to_ascii_lowercase()) {
                    None => CoTag::PKn,
                    Some(t) if t == "pkn" => CoTag::PKn,
                    Some(t) if t == "gkpkn" => CoTag::GKPKn,
                    Some(t) => return Err(bad(format!("unknown category `{t}`"))),
                };
                let e = CoreflexiveEpi::certify(self.epi_map(&a[0], &a[1])?, &self.k, tag, bound)?;
                let c = colink_operator(&e)?.colinked_module;
                Outcome::plain(json!({
                    "colinked": is_colinked_by(&e)?,
                    "colinked_presentation": c.to_json(),
                    "annihilator_gb": self.strs(&c.annihilator()),
                    "hf": self.hf(&c),
                }))
            }
            "adjoint" => self.op_adjoint(a)?,
            other => return Err(bad(format!("unknown operation `{other}`"))),
        };
        Ok(out)
    }

    fn op_link(&self, a: &[String]) -> Result<Outcome, CliError> {
        let e = self.epi(&a[0], &a[1], a.get(2))?;
        let l = link_operator(&e)?;
        let linked = is_linked_by(&e)?;
        let n_mod = &l.linked_module;
        let mut result = l.to_json(self.window());
        result["linked"] = json!(linked);
        result["grade"] = json!(e.n);
        result["hf"] = self.hf(n_mod);
        let mut out = Outcome::plain(result);
        if !n_mod.is_zero() {
            out = out.check("linked_grade", grade(n_mod) == Some(e.n));
            out = out.check("linked_unmixed", is_unmixed(n_mod)?);
            out = out.check("auslander_buchsbaum", auslander_buchsbaum_holds(n_mod));
        }
        if linked {
            let (ker, _) = e.phi.kernel();
            let d = ext(e.n, n_mod, &self.k).module;
            let w = self.window();
            let hf_eq = w.clone().all(|j| ker.hf(j) == d.hf(j));
            out.result["kernel_matches_ext"] = json!(hf_eq && ker.annihilator() == d.annihilator());
            out = out.check("kernel_matches_ext", hf_eq && ker.annihilator() == d.annihilator());
        }
        let ideals = (self.ideal(&a[0]), self.ideal(&a[1]));
        if let (true, true, Ok(c), Ok(i)) = (self.k_is_free(), self.ring.is_polynomial_ring(), ideals.0, ideals.1) {
            if e.phi.source.ngens() == 1 {
                let direct = colon(&self.ring, &c, &i);
                out.result["colon"] = json!(self.strs(&direct));
                out = out.check("annihilator_equals_colon", n_mod.annihilator() == direct);
            }
        }
        Ok(out)
    }

    /// `walk(M, C1, C2, ...)`: link `R/C_i ↠` the previous target, which is cyclic with annihilator `(C_{i-1} : I)`.
    fn op_walk(&self, a: &[String]) -> Result<Outcome, CliError> {
        let bound = self.spec.bound;
        let mut target = self.ideal(&a[0])?;
        let mut steps = Vec::new();
        for c in &a[1..] {
            let c = self.ideal(c)?;
            steps.push(ReflexiveEpi::cyclic(&self.ring, &c, &target, &self.k, CategoryTag::Pn, bound)?);
            target = colon(&self.ring, &c, &target);
        }
        let w = liaison_walk(&steps, bound, self.window())?;
        let ok = w.perfection_preserved && w.even_ext_agree && w.even_pd_agree;
        let v = Verdict::from_bool(ok, || "walk invariants differ".to_string());
        let anns: Vec<Vec<String>> = w.modules.iter().map(|m| self.strs(&m.annihilator())).collect();
        let mut out = Outcome::judged(
            json!({
                "annihilators": anns,
                "steps": to_value(&w.steps),
                "perfection_preserved": w.perfection_preserved,
                "even_ext_agree": w.even_ext_agree,
                "even_pd_agree": w.even_pd_agree,
            }),
            v,
        );
        for m in &w.modules {
            out = out.check("auslander_buchsbaum", auslander_buchsbaum_holds(m));
        }
        Ok(out)
    }

    fn op_adjoint(&self, a: &[String]) -> Result<Outcome, CliError> {
        let bound = self.spec.bound;
        let e = ReflexiveEpi::certify(self.epi_map(&a[0], &a[1])?, &self.k, CategoryTag::Pn, bound)?;
        let fwd = adjoint_transfer(&e, &self.k, bound)?;
        let linked = is_linked_by(&e)?;
        let colinked = is_colinked_by(&fwd.epi)?;
        let back = adjoint_transfer_back(&fwd.epi, bound)?;
        let mk = &fwd.epi.phi.target;
        let round = fwd.round_trip_iso && back.round_trip_iso && mu(&e.phi.target, &self.k)?.is_iso() && nu(mk, &self.k)?.is_iso();
        let pk = pk_dimension(mk, &self.k, bound)?;
        let v = Verdict::from_bool(round, || "natural maps are not isomorphisms".to_string());
        let out = Outcome::judged(
            json!({
                "linked": linked,
                "colinked": colinked,
                "round_trip_iso": round,
                "tensor_target": mk.to_json(),
                "pk_dimension": to_value(&pk),
            }),
            v,
        );
        Ok(out.check("linked_iff_colinked", linked == colinked))
    }

    /// Executes every operation (concurrently when enabled) and assembles the report.
    pub fn run(&self) -> Report {
        let spec = &self.spec;
        let results = par::map(&spec.ops, |call| self.exec(call));
        let mut ops = Vec::new();
        let (mut failures, mut errors, mut violations) = (0usize, 0usize, 0usize);
        let mut counts: BTreeMap<&'static str, usize> = BTreeMap::new();
        for (idx, (call, r)) in spec.ops.iter().zip(results).enumerate() {
            let mut entry = json!({
                "index": idx,
                "call": format!("{}({})", call.name, call.args.join(", ")),
                "line": call.line,
                "provenance": { "bound": spec.bound, "window": [spec.window.start(), spec.window.end()] },
            });
            match r {
                Ok(o) => {
                    entry["status"] = json!("ok");
                    entry["result"] = o.result;
                    if let Some(v) = &o.verdict {
                        *counts.entry(v.label()).or_default() += 1;
                        if v.fails() {
                            failures += 1;
                        }
                        entry["verdict"] = to_value(v);
                    }
                    let bad: Vec<&String> = o.checks.iter().filter(|c| !c.1).map(|c| &c.0).collect();
                    violations += bad.len();
                    entry["consistency"] = json!({ "checked": o.checks.len(), "violations": bad });
                }
                Err(e) => {
                    if matches!(e, CliError::Algebra(modlink::Error::Inconsistent(_))) {
                        violations += 1;
                    }
                    errors += 1;
                    entry["status"] = json!("error");
                    entry["error"] = json!(e.to_string());
                }
            }
            ops.push(entry);
        }
        let exit_code = if violations > 0 {
            3
        } else if failures > 0 {
            1
        } else {
            0
        };
        let json = json!({
            "schema_version": SCHEMA_VERSION,
            "name": spec.name,
            "ring": {
                "char": spec.characteristic,
                "vars": spec.vars,
                "defining": self.ring.defining_strings(),
            },
            "k": {
                "kind": match &spec.k {
                    KChoice::Trivial => "trivial".to_string(),
                    KChoice::Canonical => "canonical".to_string(),
                    KChoice::Explicit(n) => format!("explicit:{n}"),
                },
                "gen_degrees": self.k.gen_degs(),
                "ngens": self.k.ngens(),
            },
            "bounds": { "bound": spec.bound, "window": [spec.window.start(), spec.window.end()] },
            "operations": ops,
            "summary": {
                "verdicts": counts,
                "failures": failures,
                "errors": errors,
                "consistency_violations": violations,
            },
            "exit_code": exit_code,
        });
        Report { json, exit_code }
    }
}

fn min_args(op: &str) -> usize {
    match op {
        "semidualizing" => 0,
        "gb" | "invariants" | "betti" | "hf" | "perfect" | "gk_perfect" | "self_link" | "horizontal" | "change_of_rings" | "unmixed"
        | "generalized_cm" | "foxby" | "pk_dim" => 1,
        "ext" | "tor" | "schenzel" | "duality" => 3,
        _ => 2,
    }
}

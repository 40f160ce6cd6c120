#![allow(dead_code)]

use modlink::ring::{make_ring, polynomial_ring, FreeVec, Matrix, Poly, Ring};
use modlink::GradedModule;

pub fn ring(p: u32, names: &[&str]) -> Ring {
    polynomial_ring(p, names).unwrap()
}

pub fn qring(p: u32, names: &[&str], defining: &[&str]) -> Ring {
    let s = ring(p, names);
    let defs: Vec<Poly> = defining.iter().map(|d| s.parse_poly(d).unwrap()).collect();
    make_ring(p, names, &defs).unwrap()
}

pub fn polys(r: &Ring, src: &[&str]) -> Vec<Poly> {
    src.iter().map(|s| r.parse_poly(s).unwrap()).collect()
}

pub fn cyclic(r: &Ring, ideal: &[&str]) -> GradedModule {
    GradedModule::quotient(r, &polys(r, ideal))
}

pub fn ideal_module(r: &Ring, gens: &[&str]) -> GradedModule {
    GradedModule::ideal(r, &polys(r, gens))
}

/// Row-vector matrix `[p_0 p_1 …]` into `R(0)`.
pub fn row(r: &Ring, entries: &[&str]) -> Matrix {
    Matrix::from_cols(vec![0], polys(r, entries).iter().map(|p| p.to_vec()).collect())
}

pub fn col(r: &Ring, entries: &[&str]) -> FreeVec {
    FreeVec::from_components(&polys(r, entries))
}

pub fn hf(m: &GradedModule, lo: i32, hi: i32) -> Vec<i64> {
    (lo..=hi).map(|d| m.hf(d)).collect()
}

pub fn shown(r: &Ring, ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| r.fmt_poly(p)).collect()
}

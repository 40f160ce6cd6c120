use modlink::groebner::*;
use modlink::ring::*;
use modlink::Error;
use proptest::prelude::*;

fn ring(p: u32, names: &[&str]) -> Ring {
    polynomial_ring(p, names).unwrap()
}

fn polys(r: &Ring, src: &[&str]) -> Vec<Poly> {
    src.iter().map(|s| r.parse_poly(s).unwrap()).collect()
}

fn shown(r: &Ring, ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| r.fmt_poly(p)).collect()
}

fn all_monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in all_monomials(n - 1, d - a) {
            let mut v = vec![a];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Reduced basis of a homogeneous ideal recomputed by row reduction of Macaulay matrices.
fn macaulay_oracle(r: &Ring, gens: &[Poly], max_deg: u32) -> Vec<Poly> {
    let p = r.field.p as u64;
    let n = r.nvars();
    let mut leads: Vec<Vec<u32>> = Vec::new();
    let mut out = Vec::new();
    for d in 0..=max_deg {
        let mut cols = all_monomials(n, d);
        cols.sort_by(|a, b| compare_monomials(b, a).unwrap());
        let index = |e: &Vec<u32>| cols.iter().position(|c| c == e).unwrap();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for g in gens {
            let gd = g.degree().unwrap();
            if gd > d {
                continue;
            }
            for m in all_monomials(n, d - gd) {
                let mut row = vec![0u64; cols.len()];
                for (mono, c) in &g.terms {
                    let e: Vec<u32> = mono.exps(n).iter().zip(&m).map(|(a, b)| a + b).collect();
                    row[index(&e)] = *c as u64;
                }
                rows.push(row);
            }
        }
        // Gauss-Jordan
        let mut piv_row = 0;
        let mut pivots = Vec::new();
        for c in 0..cols.len() {
            let Some(k) = (piv_row..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
            rows.swap(piv_row, k);
            let inv = modinv(rows[piv_row][c], p);
            for x in rows[piv_row].iter_mut() {
                *x = *x * inv % p;
            }
            for k in 0..rows.len() {
                if k != piv_row && rows[k][c] != 0 {
                    let f = rows[k][c];
                    for j in 0..cols.len() {
                        rows[k][j] = (rows[k][j] + p * p - f * rows[piv_row][j]) % p;
                    }
                }
            }
            pivots.push((c, piv_row));
            piv_row += 1;
        }
        for (c, row) in pivots {
            let lead = &cols[c];
            if leads.iter().any(|l| l.iter().zip(lead).all(|(a, b)| a <= b)) {
                continue;
            }
            let terms: Vec<(Mono, u32)> = (0..cols.len())
                .filter(|&j| rows[row][j] != 0)
                .map(|j| (Mono::from_exps(&cols[j]).unwrap(), rows[row][j] as u32))
                .collect();
            out.push(Poly::from_terms(r.field, terms));
            leads.push(lead.clone());
        }
    }
    out.sort_by(|a, b| a.terms[0].0.grevlex(&b.terms[0].0));
    out
}

fn modinv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

#[test]
fn f7_pair_is_already_reduced() {
    let r = ring(7, &["x", "y"]);
    let g = polys(&r, &["x^2-y", "y^2-x"]);
    let vs: Vec<FreeVec> = g.iter().map(|p| p.to_vec()).collect();
    let gb = buchberger(&r, &[0], &vs);
    let mut got: Vec<String> = gb.gens.iter().map(|v| r.fmt_poly(&v.component(0))).collect();
    got.sort();
    assert_eq!(got, vec!["x^2-y", "y^2-x"]);
    assert!(satisfies_buchberger_criterion(&r, &gb));
}

#[test]
fn containment_and_empty_input() {
    let r = ring(101, &["x"]);
    assert_eq!(shown(&r, &ideal_gb(&r, &polys(&r, &["x^3", "x"]))), vec!["x"]);
    assert!(buchberger(&r, &[0], &[]).gens.is_empty());
}

#[test]
fn normal_form_examples() {
    let r = ring(101, &["x", "y"]);
    let gb = buchberger(&r, &[0], &[r.parse_poly("x^2-y").unwrap().to_vec()]);
    let nf = normal_form(&r.parse_poly("x^3").unwrap().to_vec(), &gb);
    assert_eq!(r.fmt_poly(&nf.component(0)), "x*y");
    assert!(normal_form(&gb.gens[0], &gb).is_zero());
    let m = buchberger(&r, &[0], &[Poly::var(0).to_vec(), Poly::var(1).to_vec()]);
    assert_eq!(normal_form(&Poly::constant(1).to_vec(), &m), Poly::constant(1).to_vec());
}

#[test]
fn koszul_and_quotient_syzygies() {
    let r = ring(101, &["x", "y"]);
    let a = Matrix::from_cols(vec![0], vec![Poly::var(0).to_vec(), Poly::var(1).to_vec()]);
    let k = syzygies(&r, &a);
    assert_eq!(k.ncols(), 1);
    assert_eq!(k.col_degs, vec![2]);
    let c = &k.cols[0];
    let (u, v) = (c.component(0), c.component(1));
    assert!(r.arith(ArithOp::Add, &r.arith(ArithOp::Mul, &Poly::var(0), &u).unwrap(), &r.arith(ArithOp::Mul, &Poly::var(1), &v).unwrap()).unwrap().is_zero());

    let id = Matrix::identity(&[0, 0]);
    assert_eq!(syzygies(&r, &id).ncols(), 0);

    let q = make_ring(101, &["x", "y"], &polys(&r, &["x*y"])).unwrap();
    let a = Matrix::from_cols(vec![0], vec![Poly::var(0).to_vec()]);
    let k = syzygies(&q, &a);
    assert_eq!(k.ncols(), 1);
    assert_eq!(q.fmt_poly(&k.cols[0].component(0)), "y");
}

#[test]
fn colon_examples() {
    let r1 = ring(101, &["x"]);
    assert_eq!(shown(&r1, &colon(&r1, &polys(&r1, &["x^3"]), &polys(&r1, &["x"]))), vec!["x^2"]);
    let r = ring(101, &["x", "y"]);
    let i = polys(&r, &["x^2", "x*y"]);
    assert_eq!(shown(&r, &colon(&r, &i, &polys(&r, &["x"]))), vec!["y", "x"]);
    assert_eq!(colon(&r, &i, &[Poly::constant(1)]), ideal_gb(&r, &i));
}

#[test]
fn twisted_cubic_hilbert() {
    let r = ring(101, &["x", "y", "z", "w"]);
    let g: Vec<FreeVec> = polys(&r, &["x*z-y^2", "y*w-z^2", "x*w-y*z"]).iter().map(|p| p.to_vec()).collect();
    let gb = buchberger(&r, &[0], &g);
    let h = hilbert(&r, &gb, 0..=4);
    assert_eq!((h.dim, h.degree), (Some(2), 3));
    assert_eq!(h.values.iter().map(|e| e.value).collect::<Vec<_>>(), vec![1, 4, 7, 10, 13]);

    let s = ring(101, &["x", "y"]);
    let h0 = hilbert(&s, &buchberger(&s, &[0], &[]), 0..=3);
    assert_eq!(h0.dim, Some(2));
    assert_eq!(h0.values.iter().map(|e| e.value).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
    let m = buchberger(&s, &[0], &[Poly::var(0).to_vec(), Poly::var(1).to_vec()]);
    let hm = hilbert(&s, &m, 0..=2);
    assert_eq!(hm.dim, Some(0));
    assert_eq!(hm.values.iter().map(|e| e.value).collect::<Vec<_>>(), vec![1, 0, 0]);
}

#[test]
fn lift_examples() {
    let r = ring(101, &["x", "y"]);
    let x = Matrix::from_cols(vec![0], vec![Poly::var(0).to_vec()]);
    let b = Matrix::from_cols(vec![0], vec![r.parse_poly("x^2").unwrap().to_vec()]);
    let sol = lift_through(&r, &x, &b).unwrap();
    assert_eq!(r.fmt_poly(&sol.entry(0, 0)), "x");
    let b = Matrix::from_cols(vec![0], vec![Poly::var(1).to_vec()]);
    assert_eq!(lift_through(&r, &x, &b), Err(Error::NoLift(0)));
    let xy = Matrix::from_cols(vec![0], vec![Poly::var(0).to_vec(), Poly::var(1).to_vec()]);
    let b = Matrix::from_cols(vec![0], vec![r.parse_poly("x^2+y^2").unwrap().to_vec()]);
    let sol = lift_through(&r, &xy, &b).unwrap();
    assert_eq!(xy.mul(r.field, &sol), b);
}

#[test]
fn reduced_bases_match_macaulay_matrices() {
    let r = ring(32003, &["x", "y", "z", "w"]);
    let cases: [&[&str]; 4] = [
        &["x*z-y^2", "y*w-z^2", "x*w-y*z"],
        &["x^2", "x*y", "y^3-z^2*w"],
        &["x*y-z*w", "x^2-y^2+z^2", "x*z+2*y*w"],
        &["x^3-y*z*w", "y^3-x*z^2", "x*y*w-3*z^3"],
    ];
    for g in cases {
        let g = polys(&r, g);
        let gb = ideal_gb(&r, &g);
        let top = gb.iter().map(|p| p.degree().unwrap()).max().unwrap();
        let oracle = macaulay_oracle(&r, &g, top + 1);
        assert_eq!(shown(&r, &gb), shown(&r, &oracle));
    }
}

#[test]
fn colon_containments() {
    let r = ring(101, &["x", "y", "z"]);
    let i = polys(&r, &["x^2*y", "y*z^2", "x*z^3"]);
    let j = polys(&r, &["x*z", "y"]);
    let c = colon(&r, &i, &j);
    let igb = ideal_gb(&r, &i);
    for g in &i {
        assert!(ideal_contains(&r, &c, g));
    }
    for a in &c {
        for b in &j {
            assert!(ideal_contains(&r, &igb, &a.mul(r.field, b)));
        }
    }
}

#[test]
fn iterated_syzygies_stop() {
    let r = ring(101, &["x", "y", "z"]);
    let mut a = Matrix::from_cols(vec![0], polys(&r, &["x^2", "x*y", "y*z", "z^3"]).iter().map(|p| p.to_vec()).collect());
    let mut steps = 0;
    while a.ncols() > 0 {
        a = syzygies(&r, &a);
        steps += 1;
        assert!(steps <= 4);
    }
}

fn small_poly(r: &Ring, deg: u32) -> impl Strategy<Value = Poly> {
    let r = r.clone();
    let mons = all_monomials(3, deg);
    prop::collection::vec(0u32..7, mons.len()).prop_map(move |cs| {
        let terms = mons.iter().zip(cs).map(|(e, c)| (Mono::from_exps(e).unwrap(), c)).collect();
        Poly::from_terms(r.field, terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn normal_form_is_linear(v in small_poly(&ring(7, &["x", "y", "z"]), 3), w in small_poly(&ring(7, &["x", "y", "z"]), 3)) {
        let r = ring(7, &["x", "y", "z"]);
        let g: Vec<FreeVec> = polys(&r, &["x^2-y*z", "x*y+z^2"]).iter().map(|p| p.to_vec()).collect();
        let gb = buchberger(&r, &[0], &g);
        prop_assert!(satisfies_buchberger_criterion(&r, &gb));
        let lhs = normal_form(&v.add(r.field, &w).to_vec(), &gb);
        let rhs = normal_form(&v.to_vec(), &gb).add(r.field, &normal_form(&w.to_vec(), &gb));
        prop_assert_eq!(lhs, rhs);
    }
}

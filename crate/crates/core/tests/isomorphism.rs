mod common;

use hecke_core::bkiso::*;
use hecke_core::quiver::Adjacency;
use hecke_core::report::{Check, Status};
use hecke_core::scalars::Field;

const CONFIGS: [(u64, u64, usize); 4] = [(2, 2, 2), (2, 3, 2), (3, 3, 2), (3, 2, 2)];

fn assert_all(checks: &[Check], what: &str) {
    for c in checks {
        assert!(c.status != Status::Fail, "{what}: {} failed {:?}", c.name, c.failures);
    }
}

#[test]
fn klr_relations_hold_for_both_families() {
    for (e, p, n) in CONFIGS {
        let h = common::hecke(e, p, 1, n);
        for family in [Family::Sw, Family::Bk] {
            let img = build_images(&h, family).unwrap();
            let checks = verify_klr_relations(&h, &img).unwrap();
            assert!(checks.len() >= 8, "every relation family is reported");
            assert!(checks.iter().all(|c| c.instances > 0 || c.status == Status::Skip));
            assert_all(&checks, &format!("e={e} p={p} {family}"));
        }
    }
}

#[test]
fn back_edges_occur_for_e3() {
    let h = common::hecke(3, 3, 1, 2);
    let back = h
        .idempotents
        .keys()
        .filter(|k| h.quiver.adjacency(k[0], k[1]) == Adjacency::Backward)
        .count();
    assert!(back > 0);
}

#[test]
fn roundtrip_recovers_x_and_t() {
    for (e, p, n) in CONFIGS {
        let h = common::hecke(e, p, 1, n);
        for family in [Family::Sw, Family::Bk] {
            let img = build_images(&h, family).unwrap();
            let checks = verify_roundtrip(&h, &img);
            assert_eq!(checks.len(), 2);
            assert!(checks.iter().all(Check::passed), "e={e} p={p} {family}");
        }
    }
}

#[test]
fn bk_property() {
    for (e, p, n) in CONFIGS {
        let h = common::hecke(e, p, 1, n);
        for family in [Family::Sw, Family::Bk] {
            let img = build_images(&h, family).unwrap();
            assert_all(&verify_bk_property(&h, &img), &format!("e={e} p={p} {family}"));
        }
    }
}

#[test]
fn three_strands() {
    let h = common::hecke(2, 2, 1, 3);
    for family in [Family::Sw, Family::Bk] {
        let img = build_images(&h, family).unwrap();
        assert_all(&verify_klr_relations(&h, &img).unwrap(), "n=3");
        assert!(verify_roundtrip(&h, &img).iter().all(Check::passed));
        let bk = verify_bk_property(&h, &img);
        let braid = bk.iter().find(|c| c.name == "Q braid compatibility").unwrap();
        assert_eq!(braid.status, Status::Pass);
    }
}

#[test]
fn one_strand() {
    let h = common::hecke(3, 3, 1, 1);
    assert_eq!(h.dim(), 3);
    let img = build_images(&h, Family::Sw).unwrap();
    assert!(img.psi.is_empty());
    assert_all(&verify_klr_relations(&h, &img).unwrap(), "n=1");
    assert!(verify_roundtrip(&h, &img).iter().all(Check::passed));
}

/// `P` from its defining equation `P (B - A) = (1 - q) B` on each corner,
/// with `A = v_a (e - y_a)` and `B = v_(a+1) (e - y_(a+1))`.
#[test]
fn p_solves_its_defining_equation() {
    for (e, p, n) in CONFIGS {
        let h = common::hecke(e, p, 1, n);
        let alg = &h.alg;
        let f = &alg.field;
        let img = build_images(&h, Family::Bk).unwrap();
        for ((a, k), corner) in &img.corners {
            let ek = &h.idempotents[k];
            let at = |b: usize| alg.scale(&alg.sub(ek, &alg.mul(&img.y[b], ek)), &h.value(k[b]));
            let (big_a, big_b) = (at(*a), at(a + 1));
            if k[*a] == k[a + 1] {
                assert_eq!(corner.p, *ek);
                continue;
            }
            let one_minus_q = f.sub(&f.one(), &h.scalars.q);
            let lhs = alg.mul(&corner.p, &alg.sub(&big_b, &big_a));
            assert_eq!(lhs, alg.scale(&big_b, &one_minus_q), "k={k:?}");
            assert_eq!(alg.mul(&corner.q, &corner.q_inv), *ek);
        }
    }
}

/// On an equal-residue corner the SW family has `Q = (1 - q) e + q y_(a+1) - y_a`.
/// Level 2 is needed for `e(i, i)` to survive.
#[test]
fn equal_residue_corner() {
    let h = common::hecke(2, 2, 2, 2);
    let alg = &h.alg;
    let f = &alg.field;
    let img = build_images(&h, Family::Sw).unwrap();
    let mut seen = 0;
    for ((_, k), corner) in &img.corners {
        if k[0] != k[1] {
            continue;
        }
        seen += 1;
        let ek = &h.idempotents[k];
        let expect = alg.sub(
            &alg.add(
                &alg.scale(ek, &f.sub(&f.one(), &h.scalars.q)),
                &alg.scale(&alg.mul(&img.y[1], ek), &h.scalars.q),
            ),
            &alg.mul(&img.y[0], ek),
        );
        assert_eq!(corner.q, expect);
    }
    assert!(seen > 0);
}

#[test]
fn psi_squares_to_zero_on_equal_residues() {
    let h = common::hecke(2, 2, 2, 2);
    let img = build_images(&h, Family::Sw).unwrap();
    let alg = &h.alg;
    for (k, e) in &img.idempotents {
        if k[0] == k[1] {
            assert!(alg.is_zero(&alg.mul_all(&[&img.psi[0], &img.psi[0], e])));
        }
    }
    assert!(h.idempotents.keys().any(|k| k[0] == k[1]));
}

fn brute_morita(levels: &[u64], n: u64) -> u64 {
    // sum over all functions {1..n} -> components, grouped by composition
    let parts = levels.len() as u64;
    let fact = common::factorial;
    let mut total = 0;
    for code in 0..parts.pow(n as u32) {
        let mut lam = vec![0u64; levels.len()];
        let mut c = code;
        for _ in 0..n {
            lam[(c % parts) as usize] += 1;
            c /= parts;
        }
        // each composition appears m_lambda times among the functions
        let m = fact(n) / lam.iter().map(|&x| fact(x)).product::<u64>();
        let inner: u64 = lam.iter().zip(levels).map(|(&x, &l)| l.pow(x as u32) * fact(x)).product();
        total += m * inner;
    }
    total
}

#[test]
fn morita_tables() {
    for (e, p, d, n, expect) in [(3, 2, 1, 2, 8), (2, 3, 1, 2, 18), (3, 3, 1, 2, 18), (2, 2, 1, 3, 48), (2, 4, 1, 2, 32)] {
        let (_, params, _) = common::setup(e, p, d);
        let levels = vec![params.r / params.pprime; params.pprime as usize];
        let (lhs, table) = morita_table(&params, &levels, n);
        assert_eq!(lhs, expect);
        assert_eq!(table.iter().map(|s| s.term).sum::<u64>(), expect);
        assert_eq!(brute_morita(&levels, n as u64), expect);
        let cases = table.len() as u64;
        let pp = params.pprime;
        // compositions of n into p' parts
        let binom = (1..pp).fold(1u64, |acc, i| acc * (n as u64 + i) / i);
        assert_eq!(cases, binom);
    }
}

#[test]
fn morita_blocks() {
    for (e, p, n) in [(3, 2, 2), (2, 3, 2), (2, 2, 3)] {
        let h = common::hecke(e, p, 1, n);
        let (checks, table) = morita_check(&h);
        assert!(checks.iter().all(Check::passed), "e={e} p={p}: {checks:?}");
        for s in &table {
            assert_eq!(s.block_dim, Some(s.term));
        }
    }
}

#[test]
fn psi_moves_idempotents() {
    let h = common::hecke(3, 3, 1, 2);
    let img = build_images(&h, Family::Bk).unwrap();
    let alg = &h.alg;
    for (k, e) in &img.idempotents {
        let swapped = hecke_core::quiver::swap_at(k, 1);
        let left = alg.mul(&img.psi[0], e);
        let moved = match img.idempotents.get(&swapped) {
            Some(e2) => alg.mul(e2, &left),
            None => alg.zero(),
        };
        assert_eq!(left, moved, "psi e(k) = e(s k) psi");
    }
}

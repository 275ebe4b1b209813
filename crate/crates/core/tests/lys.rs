mod common;

use common::*;
use lyzeta::lys::{
    is_bad_divisor, lys_candidate_poles, lys_charpoly, lys_orders, lys_ztop, residue_lct, sis_ztop, LysSurface,
};
use lyzeta::suspension::{suspend_f, GermSummary};
use lyzeta::{CycloProduct, Error, RatFun};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn tau(m: i64, e: i64) -> CycloProduct {
    CycloProduct::bracket(m, e)
}

/// `τ^a + 1`.
fn plus_one(a: i64) -> CycloProduct {
    tau(2 * a, 1).div(&tau(a, 1))
}

#[test]
fn xyz_display() {
    for k in 1..=8 {
        let s = lys_k("xyz", k);
        // (3s² + 6s + k + 3) / ((s + 1)³ (k + 3))
        let den = poly(&[1, 3, 3, 1]).scale(&b(k + 3));
        let z = RatFun::new(poly(&[k + 3, 6, 3]), den).unwrap();
        assert_eq!(lys_ztop(&s, &b(1)).unwrap(), z, "k = {k}");
        let delta = tau(3 + k, 3).div(&tau(1, 1));
        assert_eq!(lys_charpoly(&s).unwrap().0, delta, "k = {k}");
    }
}

#[test]
fn x_xz_y2_display() {
    for k in 1..=8 {
        let s = lys_k("x_xz_y2", k);
        let a = 3 + k;
        let (delta, num) = if k % 2 == 1 {
            (tau(a, 1).mul(&plus_one(2 * a)), poly(&[3 * (k + 4), 3]))
        } else if k % 4 == 2 {
            (tau(a, 1).mul(&plus_one(a).pow(&b(2))), poly(&[3 * (k + 4)]))
        } else {
            (tau(a, 3), poly(&[3 * (k + 4), 12]))
        };
        // (s + 1)(3(k + 4) + 4(k + 3)s)
        let den = &poly(&[1, 1]) * &poly(&[3 * (k + 4), 4 * (k + 3)]);
        let z = RatFun::new(num, den).unwrap();
        assert_eq!(lys_ztop(&s, &b(1)).unwrap(), z, "k = {k}");
        assert_eq!(lys_charpoly(&s).unwrap().0, delta.div(&tau(1, 1)), "k = {k}");
    }
}

/// LYS surface whose tangent cone is `m` concurrent lines: the germ is
/// `x^m + y^m + z^{m+k}`, a suspension of an ordinary `m`-fold point.
fn concurrent_lines(m: usize, k: i64) -> (LysSurface, GermSummary) {
    let point = GermSummary::from_graph("p", &BlowUps::start(m).graph()).unwrap();
    let mi = m as i64;
    let v = serde_json::json!({
        "n": 2, "m": mi, "k": k,
        "chi_complement": 2 - mi,
        "chi_curve_smooth": mi,
        "points": [point],
    });
    (LysSurface::from_json(&v, true).unwrap(), point)
}

#[test]
fn brieskorn_cones_match_suspension() {
    for m in 2..=5 {
        for k in 1..=6 {
            let (s, f) = concurrent_lines(m, k);
            for l in 1..=60 {
                assert_eq!(
                    lys_ztop(&s, &b(l)).unwrap(),
                    suspend_f(&f.zeta, &b(m as i64 + k), &b(l)).unwrap(),
                    "m = {m}, k = {k}, l = {l}"
                );
            }
        }
    }
}

#[test]
fn smooth_cone_is_homogeneous() {
    let s0 = lys("smooth_quartic");
    let m = 4;
    let chi_c: i64 = 7;
    let chi_curve = 3 - chi_c;
    for k in 1..=5 {
        let s = lys_k("smooth_quartic", k);
        assert_eq!(s.chi_complement, s0.chi_complement);
        // (χc(1 + s) + χ(C)) / ((3 + ms)(1 + s))
        let den = &poly(&[3, m]) * &poly(&[1, 1]);
        let z = RatFun::new(poly(&[chi_c + chi_curve, chi_c]), den).unwrap();
        assert_eq!(lys_ztop(&s, &b(1)).unwrap(), z);
        for l in 2..=12 {
            let expect = if m % l == 0 { c_over(chi_c, 3, m) } else { RatFun::zero() };
            assert_eq!(lys_ztop(&s, &b(l)).unwrap(), expect, "k = {k}, l = {l}");
        }
    }
}

#[test]
fn sis_matches_lys() {
    for name in LYS {
        let s = lys_k(name, 1);
        for l in 1..=60 {
            assert_eq!(sis_ztop(&s, &b(l)).unwrap(), lys_ztop(&s, &b(l)).unwrap(), "{name}, l = {l}");
        }
    }
    assert!(sis_ztop(&lys_k("xyz", 2), &b(1)).is_err());
}

#[test]
fn orders_match_charpoly() {
    for name in LYS {
        for k in 1..=6 {
            let s = lys_k(name, k);
            let (_, dt) = lys_charpoly(&s).unwrap();
            assert!(dt.is_polynomial());
            assert_eq!(lys_orders(&s).unwrap(), dt.root_orders().divisor_closure(), "{name}, k = {k}");
        }
    }
}

#[test]
fn poles_within_candidates() {
    for name in LYS {
        for k in 1..=6 {
            let s = lys_k(name, k);
            let pols = lys_ztop(&s, &b(1)).unwrap().pol_plus().unwrap();
            let cands = lys_candidate_poles(&s).unwrap();
            assert!(pols.is_subset(&cands), "{name}, k = {k}: {pols:?} vs {cands:?}");
        }
    }
}

#[test]
fn value_at_zero_is_one() {
    for name in LYS {
        for k in 1..=6 {
            let z = lys_ztop(&lys_k(name, k), &b(1)).unwrap();
            assert!(z.evaluate(&BigRational::zero()).unwrap().is_one(), "{name}, k = {k}");
        }
    }
}

/// `deg Δ = μ(F) = (m − 1)³ + k ∑ μ_q`.
#[test]
fn charpoly_degree_is_milnor_number() {
    for name in LYS {
        for k in 1..=6 {
            let s = lys_k(name, k);
            let m = &s.m - 1;
            let local: BigInt = s.points.iter().map(|p| p.delta.degree()).sum();
            let mu = &m * &m * &m + local * k;
            assert_eq!(lys_charpoly(&s).unwrap().0.degree(), mu, "{name}, k = {k}");
        }
    }
}

#[test]
fn kashiwara_lct_poles() {
    for (name, pole) in [("quartic_Ib", true), ("degree10_II", true), ("quartic_IbL", false), ("sextic_Ia", false)] {
        let s = lys(name);
        let z = lys_ztop(&s, &b(1)).unwrap();
        let r = BigRational::new(3.into(), s.m.clone());
        assert_eq!(z.pol_plus().unwrap().contains(&r), pole, "{name}");
    }
}

#[test]
fn residue_formula() {
    let mut used = 0;
    for name in LYS {
        let s = lys(name);
        let z = lys_ztop(&s, &b(1)).unwrap();
        let s0 = BigRational::new((-3).into(), s.m.clone());
        match residue_lct(&s) {
            Ok(r) => {
                assert_eq!(z.residue_at(&s0).unwrap(), r, "{name}");
                used += 1;
            }
            Err(Error::MultiplePoleRegime(_)) => {}
            Err(e) => panic!("{name}: {e}"),
        }
    }
    assert!(used >= 3);
    let ib = lys("quartic_Ib");
    assert!(is_bad_divisor(&ib).unwrap());
    assert!(!residue_lct(&ib).unwrap().is_zero());
    assert!(!is_bad_divisor(&lys("xyz")).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn brieskorn_random_twists(m in 2usize..=6, k in 1i64..=12, l in 1i64..=200) {
        let (s, f) = concurrent_lines(m, k);
        prop_assert_eq!(
            lys_ztop(&s, &b(l)).unwrap(),
            suspend_f(&f.zeta, &b(m as i64 + k), &b(l)).unwrap()
        );
    }
}

mod common;

use common::*;
use lyzeta::checks::{check_holomorphy, check_monodromy, CheckInput, Verdict};
use lyzeta::suspension::k2_twisted;
use lyzeta::{CycloProduct, Exec, RatFun};

#[test]
fn curves_pass_both() {
    for name in GRAPHS {
        let c = CheckInput::Graph(graph(name));
        assert_eq!(c.check_monodromy().unwrap().verdict, Verdict::Pass, "{name}");
        let h = c.check_holomorphy(Some(&b(400)), Exec::Parallel).unwrap();
        assert_eq!(h.verdict, Verdict::Pass, "{name}");
    }
}

#[test]
fn suspensions_pass_both() {
    for name in SUSPENSIONS {
        let c = suspension(name);
        assert_eq!(c.check_monodromy().unwrap().verdict, Verdict::Pass, "{name}");
        let h = c.check_holomorphy(None, Exec::Parallel).unwrap();
        assert_eq!(h.verdict, Verdict::Pass, "{name}");
        assert!(h.skipped > 0);
    }
}

#[test]
fn cusp3_k2_bad_index() {
    let c = suspension("cusp3_k2");
    let CheckInput::Suspension { germ, .. } = &c else {
        panic!("not a suspension")
    };
    let orders = c.orders().unwrap();
    assert!(!orders.divisor_closure().contains(&b(18)));
    let z18 = c.twisted(&b(18)).unwrap();
    assert!(z18.is_zero());
    assert_eq!(z18, k2_twisted(&germ.zeta, &b(18)).unwrap());
    let h = c.check_holomorphy(Some(&b(40)), Exec::Sequential).unwrap();
    assert!(h.items.iter().any(|i| i.ell == b(18) && i.ok));

    let m = c.check_monodromy().unwrap();
    let item = m.items.iter().find(|i| i.pole == q(-7, 9)).expect("pole -7/9");
    assert_eq!(item.order, b(9));
    assert!(item.ok);
}

#[test]
fn lys_pass_both() {
    for name in LYS {
        for k in [1, 2, 3] {
            let c = CheckInput::Lys(lys_k(name, k));
            assert_eq!(c.check_monodromy().unwrap().verdict, Verdict::Pass, "{name}, k = {k}");
            let orders = c.orders().unwrap();
            let l_max = orders.iter().max().unwrap() * 2;
            let h = c.check_holomorphy(Some(&l_max), Exec::Parallel).unwrap();
            assert_eq!(h.verdict, Verdict::Pass, "{name}, k = {k}");
        }
    }
}

#[test]
fn xyz_pole_is_minus_one_only() {
    let r = CheckInput::Lys(lys("xyz")).check_monodromy().unwrap();
    assert_eq!(r.items.len(), 1);
    assert_eq!(r.items[0].pole, q(-1, 1));
    assert_eq!(r.items[0].note, None);
}

#[test]
fn exec_modes_agree() {
    let c = CheckInput::Lys(lys("degree10_II"));
    let a = c.check_holomorphy(None, Exec::Parallel).unwrap();
    let s = c.check_holomorphy(None, Exec::Sequential).unwrap();
    assert_eq!(a, s);
}

#[test]
fn detects_failures() {
    // a pole at −1/3 with only Φ₁Φ₂ available
    let z = &RatFun::recip_linear(3, 1) + &RatFun::recip_linear(1, 1);
    let r = check_monodromy(&z, &CycloProduct::from_cyclotomic([(b(1), b(1)), (b(2), b(1))])).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    assert_eq!(r.items.iter().filter(|i| !i.ok).count(), 1);

    let orders = [b(2)].into_iter().collect();
    let fam = |l: &num_bigint::BigInt| Ok(if *l == b(5) { RatFun::one() } else { RatFun::zero() });
    let h = check_holomorphy(fam, &orders, &b(10), Exec::Sequential).unwrap();
    assert_eq!(h.verdict, Verdict::Fail);
    let bad: Vec<_> = h.items.iter().filter(|i| !i.ok).collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0].ell, b(5));
    assert_eq!(bad[0].zeta, Some(RatFun::one()));
}

#[test]
fn input_detection() {
    assert!(matches!(
        CheckInput::from_json(&fixture("graph_cusp"), true).unwrap(),
        CheckInput::Graph(_)
    ));
    assert!(matches!(
        CheckInput::from_json(&fixture("lys_xyz"), true).unwrap(),
        CheckInput::Lys(_)
    ));
    let v = serde_json::json!({"suspension": {"k": 3, "germ": fixture("germ_x5y6")}});
    assert!(matches!(
        CheckInput::from_json(&v, true).unwrap(),
        CheckInput::Suspension { .. }
    ));
    assert!(CheckInput::from_json(&serde_json::json!({"foo": 1}), true).is_err());
    let v = serde_json::json!({"suspension": {"k": 0, "germ": fixture("germ_x5y6")}});
    assert!(CheckInput::from_json(&v, true).is_err());
}

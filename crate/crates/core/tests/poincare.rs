//! Characteristic classes of the projective spaces and their products,
//! compared with closed forms computed from exact integer binomials.

use sqwu::poincare::{
    check_euler_theorem, check_lowest_class_agreement, check_middle_form, check_orientable_wu_equiv, check_wu_formula,
    check_wu_vanishing, euler_characteristic, middle_form, orientability_order, sw_classes, total_wu, BasisRef,
    ClassVector, PoincareComplex,
};
use sqwu::spaces::{build, SpaceExpr};

/// C(n, k) mod 2 from an exact Pascal triangle.
fn odd_binomial(n: usize, k: usize) -> bool {
    if k > n {
        return false;
    }
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k] % 2 == 1
}

fn space(name: &str) -> PoincareComplex {
    build(&name.parse::<SpaceExpr>().unwrap()).unwrap()
}

/// Coefficient of `x^i` in each component, for single-generator rings.
fn powers(m: &PoincareComplex, d: usize, classes: &[ClassVector]) -> Vec<bool> {
    (0..=m.dimension() / d).map(|i| classes[d * i].coords.get(0)).collect()
}

#[test]
fn projective_spaces_match_closed_forms() {
    for (d, emax) in [(1usize, 16usize), (2, 8), (4, 4), (8, 2)] {
        for e in 1..=emax {
            let m = build(&SpaceExpr::Proj { d: d as u32, e: e as u32 }).unwrap();
            // w = (1 + x)^(e+1)
            let w = sw_classes(&m).unwrap();
            let expect: Vec<bool> = (0..=e).map(|i| odd_binomial(e + 1, i)).collect();
            assert_eq!(powers(&m, d, &w.components), expect, "w of Proj({d}, {e})");
            // v_i = C(e - i, i) x^i
            let v = total_wu(&m).unwrap();
            let expect: Vec<bool> = (0..=e).map(|i| i <= e - i && odd_binomial(e - i, i)).collect();
            assert_eq!(powers(&m, d, &v.components), expect, "v of Proj({d}, {e})");
            for deg in (0..=d * e).filter(|deg| deg % d != 0) {
                assert!(w.vanishes(deg) && v.vanishes(deg));
            }
            let chi: i64 = (0..=e).map(|i| if d * i % 2 == 0 { 1 } else { -1 }).sum();
            assert_eq!(euler_characteristic(&m), chi);
            if d % 2 == 0 {
                assert_eq!(chi, e as i64 + 1);
            }
        }
    }
}

#[test]
fn wu_classes_satisfy_the_defining_identity() {
    for name in ["RP(6)", "CP(3)xRP(2)", "HP(2)xCP(1)", "RP(3)xRP(4)", "OP(2)"] {
        let m = space(name);
        let r = m.ring();
        let v = total_wu(&m).unwrap();
        let n = m.dimension();
        for k in 0..=n {
            for j in 0..r.dim(n - k) {
                let x = ClassVector::basis(r, BasisRef::new(n - k, j));
                let lhs = m.evaluate(&r.cup(&v.components[k], &x));
                assert_eq!(lhs, m.evaluate(&r.sq(k, &x)), "{name}: v_{k}");
            }
        }
    }
}

#[test]
fn strictness_examples() {
    for (name, dim, k, chi) in
        [("RP(2)", 2, 0, 1), ("CP(2)", 4, 1, 3), ("HP(2)", 8, 2, 3), ("OP(2)", 16, 3, 3), ("OP(2)xOP(2)", 32, 3, 9)]
    {
        let m = space(name);
        assert_eq!(m.dimension(), dim, "{name}");
        let o = orientability_order(&m).unwrap();
        assert_eq!((o.k, o.all_vanish), (k, false), "{name}");
        assert_eq!(euler_characteristic(&m), chi, "{name}");
        assert_eq!(dim % (1 << (k + 1)), 0, "{name}");
        assert!(check_euler_theorem(&m).passed());
    }
}

#[test]
fn rp4_and_cp3() {
    let o = orientability_order(&space("RP(4)")).unwrap();
    assert_eq!((o.k, o.all_vanish), (0, false));
    let m = space("CP(3)");
    assert!(sw_classes(&m).unwrap().is_one());
    assert_eq!(euler_characteristic(&m), 4);
    let o = orientability_order(&m).unwrap();
    assert_eq!((o.k, o.all_vanish), (3, true));
}

#[test]
fn middle_forms() {
    // CP(2m): middle Betti number 1 and x^m * x^m = x^(2m) != 0
    for m in 1..=4 {
        let s = space(&format!("CP({})", 2 * m));
        let form = middle_form(&s).unwrap();
        assert_eq!(form.rows(), 1);
        assert!(form.get(0, 0));
        assert!(check_middle_form(&s).passed());
    }
    // S^2 x S^2: hyperbolic form
    let s = space("CP(1)xCP(1)");
    let form = middle_form(&s).unwrap();
    assert_eq!(form.rows(), 2);
    assert!(!form.get(0, 0) && !form.get(1, 1) && form.get(0, 1) && form.get(1, 0));
    assert!(check_middle_form(&s).passed());
    assert!(middle_form(&space("RP(3)")).is_err());
}

#[test]
fn checkers_pass_on_small_products() {
    for name in ["RP(3)xRP(5)", "CP(2)xHP(1)", "RP(2)xHP(2)", "CP(3)xCP(2)", "RP(1)xOP(1)"] {
        let m = space(name);
        for rep in [
            check_wu_vanishing(&m),
            check_euler_theorem(&m),
            check_orientable_wu_equiv(&m),
            check_lowest_class_agreement(&m),
            check_wu_formula(&m),
            check_middle_form(&m),
        ] {
            assert!(rep.passed(), "{name}: {rep}");
        }
    }
}

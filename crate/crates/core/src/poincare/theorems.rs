//! Executable checks of the vanishing and parity statements on a given complex.

use super::classes::orientability_cap;
use super::{
    apply_element, euler_characteristic, middle_form, orientability_order, sw_classes, total_wu, wu_class, BasisRef,
    ClassVector, PoincareComplex, Report, TotalClass,
};
use crate::f2core::{alternating_det_mod2, wu_coefficient, F2Vector};
use crate::steenrod::decompose;

fn classes(m: &PoincareComplex, rep: &mut Report) -> Option<(TotalClass, TotalClass)> {
    match (total_wu(m), sw_classes(m)) {
        (Ok(v), Ok(w)) => Some((v, w)),
        (Err(e), _) | (_, Err(e)) => {
            rep.fail("wu", e.to_string());
            None
        }
    }
}

/// For a k-orientable complex, `v_l = 0` whenever `2^k` does not divide `l`.
///
/// Also replays the argument: for each such `l` the decomposition
/// `Sq^l = sum Sq^i alpha_i` is applied to every class of degree `n - l`,
/// and each summand `Sq^i(alpha_i x)` must evaluate to zero on the top class.
pub fn check_wu_vanishing(m: &PoincareComplex) -> Report {
    let mut rep = Report::new("wu-vanishing");
    let n = m.dimension();
    let (v, ord) = match (total_wu(m), orientability_order(m)) {
        (Ok(v), Ok(o)) => (v, o),
        (Err(e), _) | (_, Err(e)) => {
            rep.fail("wu", e.to_string());
            return rep;
        }
    };
    let step = 1usize << ord.k;
    let r = m.ring();
    for l in (1..=n).filter(|l| l % step != 0) {
        rep.expect(v.vanishes(l), "wu-vanishing", || {
            format!("v_{l} = {} although 2^{} does not divide {l}", r.format_class(&v.components[l]), ord.k)
        });
        let witness = match decompose(l as u32) {
            Ok(w) => w,
            Err(e) => {
                rep.fail("replay", e.to_string());
                continue;
            }
        };
        for j in 0..r.dim(n - l) {
            let x = ClassVector::basis(r, BasisRef::new(n - l, j));
            let mut total = false;
            for (&i, alpha) in &witness.alphas {
                let y = apply_element(m, alpha, &x).expect("witness pieces are homogeneous");
                let top = m.evaluate(&r.sq(i as usize, &y));
                total ^= top;
                rep.expect(!top, "replay", || {
                    format!(
                        "Sq^{i} alpha_{i} {} is nonzero on the top class (l = {l})",
                        r.name(BasisRef::new(n - l, j))
                    )
                });
            }
            rep.expect(total == m.evaluate(&r.sq(l, &x)), "replay", || {
                format!("decomposition of Sq^{l} disagrees with Sq^{l} on {}", r.name(BasisRef::new(n - l, j)))
            });
        }
    }
    rep
}

/// Odd Euler characteristic forces `2^(k+1)` to divide the dimension.
pub fn check_euler_theorem(m: &PoincareComplex) -> Report {
    let mut rep = Report::new("euler-parity");
    let n = m.dimension();
    let ord = match orientability_order(m) {
        Ok(o) => o,
        Err(e) => {
            rep.fail("wu", e.to_string());
            return rep;
        }
    };
    let chi = euler_characteristic(m);
    let ok = chi % 2 == 0 || n % (1usize << (ord.k + 1)) == 0;
    rep.expect(ok, "euler-parity", || format!("chi = {chi} is odd but 2^{} does not divide {n}", ord.k + 1));
    rep
}

/// For each `k` up to the least `k` with `2^k > n`:
/// `w_i = 0 (0 < i < 2^k)` iff `v_i = 0 (0 < i <= 2^(k-1))` iff `v_i = 0 (0 < i < 2^k)`.
pub fn check_orientable_wu_equiv(m: &PoincareComplex) -> Report {
    let mut rep = Report::new("orientable-equiv");
    let Some((v, w)) = classes(m, &mut rep) else {
        return rep;
    };
    for k in 0..=orientability_cap(m.dimension()) {
        let full = 1usize << k;
        let half = full / 2;
        let i = (1..full).all(|d| w.vanishes(d));
        let ii = (1..=half).all(|d| v.vanishes(d));
        let iii = (1..full).all(|d| v.vanishes(d));
        rep.expect(i == ii && ii == iii, "orientable-equiv", || {
            format!("k = {k}: w-condition {i}, v up to 2^(k-1) {ii}, v below 2^k {iii}")
        });
    }
    rep
}

/// `w_1 = v_1`, and the lowest nonzero SW class equals the Wu class of that degree
/// (with all lower classes agreeing too).
pub fn check_lowest_class_agreement(m: &PoincareComplex) -> Report {
    let mut rep = Report::new("lowest-class");
    let Some((v, w)) = classes(m, &mut rep) else {
        return rep;
    };
    let n = m.dimension();
    let r = m.ring();
    if n >= 1 {
        rep.expect(v.components[1] == w.components[1], "w1-v1", || {
            format!("w_1 = {} but v_1 = {}", r.format_class(&w.components[1]), r.format_class(&v.components[1]))
        });
    }
    let upto = w.lowest_nonzero().unwrap_or(n);
    for d in 1..=upto {
        rep.expect(v.components[d] == w.components[d], "lowest-class", || {
            format!("w_{d} = {} but v_{d} = {}", r.format_class(&w.components[d]), r.format_class(&v.components[d]))
        });
    }
    rep
}

/// `Sq^i(w_j) = sum_t C(j+t-i-1, t) w_(i-t) w_(j+t)` for `i <= j`, `i + j <= n`.
pub fn check_wu_formula(m: &PoincareComplex) -> Report {
    let mut rep = Report::new("wu-formula");
    let Some((_, w)) = classes(m, &mut rep) else {
        return rep;
    };
    let n = m.dimension();
    let r = m.ring();
    for j in 0..=n {
        for i in 0..=j.min(n - j) {
            let lhs = r.sq(i, &w.components[j]);
            let mut rhs = F2Vector::zeros(r.dim(i + j));
            for t in 0..=i {
                if j + t > n || !wu_coefficient(i as u64, j as u64, t as u64) {
                    continue;
                }
                rhs ^= &r.cup(&w.components[i - t], &w.components[j + t]).coords;
            }
            rep.expect(lhs.coords == rhs, "wu-formula", || {
                format!(
                    "Sq^{i}(w_{j}) = {} but the formula gives {}",
                    r.format_class(&lhs),
                    r.format_class(&ClassVector::new(i + j, rhs.clone()))
                )
            });
        }
    }
    rep
}

/// Middle-dimension form: symmetric always; with `v_(n/2) = 0` it has zero
/// diagonal, is nondegenerate, and the middle dimension and `chi` are even.
/// With `v_(n/2) != 0` some `x` has `x * x != 0`. Odd dimensions pass vacuously.
pub fn check_middle_form(m: &PoincareComplex) -> Report {
    let mut rep = Report::new("middle-form");
    let n = m.dimension();
    if n % 2 == 1 {
        return rep;
    }
    let form = middle_form(m).expect("even dimension");
    rep.expect(form.is_symmetric(), "symmetry", || "middle form is not symmetric".into());
    let v = match wu_class(m, n / 2) {
        Ok(v) => v,
        Err(e) => {
            rep.fail("wu", e.to_string());
            return rep;
        }
    };
    let middle = m.ring().dim(n / 2);
    let diagonal_zero = (0..middle).all(|a| !form.get(a, a));
    if v.is_zero() {
        rep.expect(diagonal_zero, "zero-diagonal", || "v is zero but some x * x != 0".into());
        if diagonal_zero && form.is_symmetric() {
            let det = alternating_det_mod2(&form);
            rep.expect(det == Ok(true), "nondegenerate", || format!("determinant {det:?}"));
        }
        rep.expect(middle % 2 == 0, "even-middle", || format!("middle dimension {middle} is odd"));
        let chi = euler_characteristic(m);
        rep.expect(chi % 2 == 0, "even-euler", || format!("chi = {chi} is odd"));
    } else {
        rep.expect(!diagonal_zero, "nonzero-diagonal", || "v is nonzero but x * x = 0 for every x".into());
    }
    rep
}

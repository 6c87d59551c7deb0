//! Adem relations and normalization to the admissible basis.
//!
//! Normalization works from the right: the tail of a monomial is brought to
//! admissible form first, so every rewrite step is `Sq^a . J` with `J`
//! admissible, and the only inadmissible pair is the leftmost one `(a, J_1)`.
//! Each step strictly lowers the moment `sum j * i_j`, which bounds the
//! recursion. Results of `Sq^a . J` are memoized per thread.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::rc::Rc;
use std::sync::OnceLock;

use super::{SteenrodElement, SteenrodError, SteenrodMonomial, MAX_DEGREE};
use crate::f2core::binom_mod2;

/// Environment variable capping the number of entries in each memo table.
pub const MEMO_CAP_ENV: &str = "SQWU_MEMO_CAP";

const DEFAULT_MEMO_CAP: usize = 1 << 20;

/// Per-table entry cap. Tables are cleared when they grow past it.
pub fn memo_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MEMO_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&v: &usize| v > 0)
            .unwrap_or(DEFAULT_MEMO_CAP)
    })
}

type Terms = Rc<Vec<SteenrodMonomial>>;

thread_local! {
    static ADEM_MEMO: RefCell<HashMap<(u32, u32), Rc<Vec<(u32, u32)>>>> = RefCell::new(HashMap::new());
    static LEFT_MEMO: RefCell<HashMap<(u32, SteenrodMonomial), Terms>> = RefCell::new(HashMap::new());
}

fn memo_insert<K: std::hash::Hash + Eq, V>(map: &mut HashMap<K, V>, key: K, value: V) {
    if map.len() >= memo_cap() {
        map.clear();
    }
    map.insert(key, value);
}

/// `(x, y)` pairs of `Sq^a Sq^b = sum C(b-c-1, a-2c) Sq^(a+b-c) Sq^c`,
/// with `y = 0` meaning the single square `Sq^x`.
fn adem_pairs(a: u32, b: u32) -> Rc<Vec<(u32, u32)>> {
    debug_assert!(a > 0 && a < 2 * b);
    if let Some(hit) = ADEM_MEMO.with(|m| m.borrow().get(&(a, b)).cloned()) {
        return hit;
    }
    let pairs: Vec<(u32, u32)> = (0..=a / 2)
        .filter(|&c| binom_mod2(u64::from(b - c - 1), u64::from(a - 2 * c)))
        .map(|c| (a + b - c, c))
        .collect();
    let pairs = Rc::new(pairs);
    ADEM_MEMO.with(|m| memo_insert(&mut m.borrow_mut(), (a, b), pairs.clone()));
    pairs
}

/// The Adem relation for `Sq^a Sq^b`, `0 < a < 2b`.
pub fn adem_expand(a: u32, b: u32) -> Result<SteenrodElement, SteenrodError> {
    if a == 0 || u64::from(a) >= 2 * u64::from(b) {
        return Err(SteenrodError::AdmissiblePair { a, b });
    }
    let degree = u64::from(a) + u64::from(b);
    if degree > MAX_DEGREE {
        return Err(SteenrodError::DegreeTooLarge(degree));
    }
    Ok(adem_pairs(a, b)
        .iter()
        .map(|&(x, y)| {
            if y == 0 {
                SteenrodMonomial::from_vec_unchecked(vec![x])
            } else {
                SteenrodMonomial::from_vec_unchecked(vec![x, y])
            }
        })
        .collect())
}

fn toggle(acc: &mut HashSet<SteenrodMonomial>, m: &SteenrodMonomial) {
    if !acc.remove(m) {
        acc.insert(m.clone());
    }
}

/// Normal form of `Sq^a . tail` for an admissible `tail`.
fn left_multiply(a: u32, tail: &SteenrodMonomial) -> Terms {
    let ex = tail.exponents();
    if ex.first().is_none_or(|&first| u64::from(a) >= 2 * u64::from(first)) {
        let mut v = Vec::with_capacity(ex.len() + 1);
        v.push(a);
        v.extend_from_slice(ex);
        return Rc::new(vec![SteenrodMonomial::from_vec_unchecked(v)]);
    }
    let key = (a, tail.clone());
    if let Some(hit) = LEFT_MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }
    let rest = SteenrodMonomial::from_vec_unchecked(ex[1..].to_vec());
    let mut acc = HashSet::new();
    for &(x, y) in adem_pairs(a, ex[0]).iter() {
        if y == 0 {
            for t in left_multiply(x, &rest).iter() {
                toggle(&mut acc, t);
            }
        } else {
            for t in left_multiply(y, &rest).iter() {
                for u in left_multiply(x, t).iter() {
                    toggle(&mut acc, u);
                }
            }
        }
    }
    let mut out: Vec<_> = acc.into_iter().collect();
    out.sort();
    let out = Rc::new(out);
    LEFT_MEMO.with(|m| memo_insert(&mut m.borrow_mut(), key, out.clone()));
    out
}

fn normalize_monomial_into(m: &SteenrodMonomial, acc: &mut HashSet<SteenrodMonomial>) {
    if m.is_admissible() {
        toggle(acc, m);
        return;
    }
    let mut current: HashSet<SteenrodMonomial> = HashSet::from([SteenrodMonomial::identity()]);
    for &a in m.exponents().iter().rev() {
        let mut next = HashSet::new();
        for t in &current {
            for u in left_multiply(a, t).iter() {
                toggle(&mut next, u);
            }
        }
        current = next;
        if current.is_empty() {
            return;
        }
    }
    for t in &current {
        toggle(acc, t);
    }
}

/// Rewrites `e` in the admissible basis.
pub fn normalize(e: &SteenrodElement) -> SteenrodElement {
    let mut acc = HashSet::new();
    for m in e.terms() {
        normalize_monomial_into(m, &mut acc);
    }
    acc.into_iter().collect()
}

/// Normalized composite `x . y`.
///
/// # Panics
/// If a product term exceeds [`MAX_DEGREE`].
pub fn multiply(x: &SteenrodElement, y: &SteenrodElement) -> SteenrodElement {
    let mut acc = HashSet::new();
    for a in x.terms() {
        for b in y.terms() {
            let m = a.concat(b).expect("product degree exceeds the supported maximum");
            normalize_monomial_into(&m, &mut acc);
        }
    }
    acc.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> SteenrodElement {
        s.parse().unwrap()
    }

    #[test]
    fn adem_examples() {
        assert!(adem_expand(3, 2).unwrap().is_zero());
        assert_eq!(adem_expand(1, 2).unwrap(), el("Sq 3"));
        assert_eq!(adem_expand(2, 2).unwrap(), el("Sq 3 Sq 1"));
        assert_eq!(adem_expand(1, 1).unwrap(), SteenrodElement::zero());
        // textbook: Sq^2 Sq^3 = Sq^5 + Sq^4 Sq^1
        assert_eq!(adem_expand(2, 3).unwrap(), el("Sq 5 + Sq 4 Sq 1"));
    }

    #[test]
    fn adem_rejects_admissible_pairs() {
        assert_eq!(adem_expand(4, 2), Err(SteenrodError::AdmissiblePair { a: 4, b: 2 }));
        assert_eq!(adem_expand(0, 3), Err(SteenrodError::AdmissiblePair { a: 0, b: 3 }));
        assert!(matches!(adem_expand(1, 1 << 16), Err(SteenrodError::DegreeTooLarge(_))));
    }

    #[test]
    fn adem_terms_have_larger_leading_square() {
        for b in 1..30 {
            for a in 1..2 * b {
                let e = adem_expand(a, b).unwrap();
                assert!(e.is_admissible());
                for m in e.terms() {
                    assert!(m.exponents().len() <= 2);
                    assert!(m.exponents()[0] > a);
                    assert_eq!(m.degree(), u64::from(a + b));
                }
            }
        }
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&el("Sq 1 Sq 2")), el("Sq 3"));
        assert_eq!(normalize(&el("Sq 2 Sq 2")), el("Sq 3 Sq 1"));
        assert_eq!(normalize(&el("Sq 3 Sq 1")), el("Sq 3 Sq 1"));
        assert_eq!(normalize(&el("Sq 2 Sq 3")), el("Sq 5 + Sq 4 Sq 1"));
        assert_eq!(normalize(&el("Sq 0")), el("Sq 0"));
        assert_eq!(normalize(&el("Sq 1 Sq 2 + Sq 3")), SteenrodElement::zero());
    }

    #[test]
    fn multiply_examples() {
        let y = el("Sq 2 Sq 2 + Sq 6");
        assert_eq!(multiply(&SteenrodElement::identity(), &y), normalize(&y));
        for n in 1..20 {
            assert!(multiply(&SteenrodElement::square(2 * n - 1), &SteenrodElement::square(n)).is_zero());
        }
        assert!(multiply(&SteenrodElement::square(1), &SteenrodElement::square(1)).is_zero());
    }

    #[test]
    fn normalization_survives_small_memo_tables() {
        let e = el("Sq 1 Sq 2 Sq 3 Sq 4 Sq 5");
        let n1 = normalize(&e);
        LEFT_MEMO.with(|m| m.borrow_mut().clear());
        ADEM_MEMO.with(|m| m.borrow_mut().clear());
        assert_eq!(normalize(&e), n1);
        assert!(n1.is_admissible());
    }
}

//! `Sq^n = sum_{i=1}^{2^(k-1)} Sq^i . alpha_i` for `n = 2^k m + 2^(k-1)`.
//!
//! The construction replays the inductive argument. With `b = 2^k m` and
//! `h = 2^(k-1)`, the Adem relation for `Sq^h Sq^b` gives
//!
//! ```text
//! Sq^n = Sq^h Sq^b + sum_{c=1}^{h/2} C(b-c-1, h-2c) Sq^(n-c) Sq^c
//! ```
//!
//! because the coefficient `C(b-1, h)` on the left is odd. Each residual
//! square is `Sq^(b+i)` with `i = h - c`, so `h/2 <= i < h`. Those are
//! expanded the same way through `Sq^i Sq^b`, recursing on `Sq^(b+i-c)`.
//! Every summand ends up with a leading square `Sq^i`, `i <= h`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{multiply, normalize, SteenrodElement, SteenrodError, SteenrodMonomial, MAX_DEGREE};
use crate::f2core::binom_mod2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionWitness {
    pub n: u32,
    pub k: u32,
    /// `i -> alpha_i`, of degree `n - i`, in admissible form. Zero alphas are omitted.
    pub alphas: BTreeMap<u32, SteenrodElement>,
}

impl DecompositionWitness {
    /// `m` in `n = 2^k m + 2^(k-1)`.
    pub fn m(&self) -> u32 {
        (self.n - (1 << (self.k - 1))) >> self.k
    }

    /// Largest leading square permitted, `2^(k-1)`.
    pub fn max_leading(&self) -> u32 {
        1 << (self.k - 1)
    }

    /// The summands `Sq^i . alpha_i` as un-normalized composites.
    pub fn summands(&self) -> Vec<SteenrodMonomial> {
        let mut out = Vec::new();
        for (&i, alpha) in self.alphas.iter().rev() {
            let lead = SteenrodMonomial::square(i);
            for t in alpha.terms() {
                out.push(lead.concat(t).expect("witness degree is bounded by n"));
            }
        }
        out
    }
}

impl fmt::Display for DecompositionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sq {} =", self.n)?;
        let mut first = true;
        for (&i, alpha) in self.alphas.iter().rev() {
            for t in alpha.terms() {
                write!(f, "{} Sq {i} . {t}", if first { "" } else { " +" })?;
                first = false;
            }
        }
        if first {
            write!(f, " 0")?;
        }
        Ok(())
    }
}

type Pieces = BTreeMap<u32, SteenrodElement>;

fn add_piece(into: &mut Pieces, lead: u32, alpha: &SteenrodElement) {
    let slot = into.entry(lead).or_default();
    *slot += alpha;
}

/// Pieces for `Sq^(b + i)`, `1 <= i < 2^k`, via `Sq^i Sq^b`.
fn residual(b: u32, i: u32, memo: &mut HashMap<u32, Pieces>) -> Pieces {
    if let Some(hit) = memo.get(&i) {
        return hit.clone();
    }
    debug_assert!(binom_mod2(u64::from(b - 1), u64::from(i)));
    let mut pieces = Pieces::new();
    add_piece(&mut pieces, i, &SteenrodElement::square(b));
    for c in 1..=i / 2 {
        if !binom_mod2(u64::from(b - c - 1), u64::from(i - 2 * c)) {
            continue;
        }
        let tail = SteenrodElement::square(c);
        for (lead, alpha) in residual(b, i - c, memo) {
            add_piece(&mut pieces, lead, &multiply(&alpha, &tail));
        }
    }
    memo.insert(i, pieces.clone());
    pieces
}

/// Builds the witness for `Sq^n` traced through the inductive proof.
pub fn decompose(n: u32) -> Result<DecompositionWitness, SteenrodError> {
    if n == 0 {
        return Err(SteenrodError::NonPositive);
    }
    if u64::from(n) > MAX_DEGREE {
        return Err(SteenrodError::DegreeTooLarge(u64::from(n)));
    }
    let k = n.trailing_zeros() + 1;
    let half = 1u32 << (k - 1);
    let b = n - half;
    let mut alphas = Pieces::new();
    if b == 0 {
        alphas.insert(n, SteenrodElement::identity());
        return Ok(DecompositionWitness { n, k, alphas });
    }
    // C(b - 1, 2^(k-1)) is odd, so Sq^n is isolated on the left.
    debug_assert!(binom_mod2(u64::from(b - 1), u64::from(half)));
    add_piece(&mut alphas, half, &SteenrodElement::square(b));
    let mut memo = HashMap::new();
    for c in 1..=half / 2 {
        if !binom_mod2(u64::from(b - c - 1), u64::from(half - 2 * c)) {
            continue;
        }
        let tail = SteenrodElement::square(c);
        for (lead, alpha) in residual(b, half - c, &mut memo) {
            add_piece(&mut alphas, lead, &multiply(&alpha, &tail));
        }
    }
    let alphas = alphas.into_iter().map(|(i, a)| (i, normalize(&a))).filter(|(_, a)| !a.is_zero()).collect();
    Ok(DecompositionWitness { n, k, alphas })
}

/// `normalize(sum Sq^i alpha_i) == Sq^n`.
pub fn verify_witness(w: &DecompositionWitness) -> bool {
    let mut total = SteenrodElement::zero();
    for (&i, alpha) in &w.alphas {
        total += &multiply(&SteenrodElement::square(i), alpha);
    }
    normalize(&total) == SteenrodElement::square(w.n)
}

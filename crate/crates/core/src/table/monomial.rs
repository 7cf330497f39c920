//! Laurent monomials in the amplitudes, and equalities between a primed (target)
//! and an unprimed (source) monomial.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::state::{FlipMask, SupportPattern, ThreeQubitPureState};

const LETTERS: &[u8] = b"abcdefgh";

/// Exponents indexed by basis index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [i64; 8]);

impl Monomial {
    /// Parses letters `num/den` where the i-th letter names the i-th smallest
    /// index of `support`.
    pub fn from_letters(num: &str, den: &str, support: SupportPattern) -> Self {
        let indices: Vec<usize> = support.indices().collect();
        let mut e = [0i64; 8];
        let mut add = |s: &str, sign: i64| {
            for ch in s.bytes() {
                let pos = LETTERS
                    .iter()
                    .position(|&l| l == ch)
                    .unwrap_or_else(|| panic!("bad coefficient letter {:?}", ch as char));
                e[indices[pos]] += sign;
            }
        };
        add(num, 1);
        add(den, -1);
        Monomial(e)
    }

    pub fn from_support_vector(support: SupportPattern, exps: &[i64]) -> Self {
        let mut e = [0i64; 8];
        for (k, x) in support.indices().zip(exps) {
            e[k] = *x;
        }
        Monomial(e)
    }

    pub fn exponents(&self) -> &[i64; 8] {
        &self.0
    }

    pub fn on_support(&self, support: SupportPattern) -> Vec<i64> {
        support.indices().map(|k| self.0[k]).collect()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn inverse(&self) -> Self {
        Monomial(self.0.map(|x| -x))
    }

    pub fn scaled(&self, f: i64) -> Self {
        Monomial(self.0.map(|x| f * x))
    }

    /// Exponents relabelled through `k ↦ k ⊕ mask`: result[j] = self[j ⊕ mask].
    pub fn permuted(&self, mask: FlipMask) -> Self {
        let m = mask.bits() as usize;
        Monomial(std::array::from_fn(|j| self.0[j ^ m]))
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn evaluate(&self, state: &ThreeQubitPureState) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let (mut num, mut den) = (one, one);
        for (k, &e) in self.0.iter().enumerate() {
            if e > 0 {
                num *= state.amp(k).powi(e as i32);
            } else if e < 0 {
                den *= state.amp(k).powi(-e as i32);
            }
        }
        num / den
    }

    /// Letter rendering such as `ad/bc` or `a²e/bcd`; `prime` appends `'` to each letter.
    pub fn render(&self, support: SupportPattern, prime: bool) -> String {
        let side = |sign: i64| {
            let mut s = String::new();
            for (pos, k) in support.indices().enumerate() {
                let e = self.0[k] * sign;
                if e <= 0 {
                    continue;
                }
                s.push(LETTERS[pos] as char);
                if prime {
                    s.push('\'');
                }
                if e > 1 {
                    s.push_str(&superscript(e));
                }
            }
            if s.is_empty() {
                s.push('1');
            }
            s
        };
        let (num, den) = (side(1), side(-1));
        if den == "1" {
            num
        } else {
            format!("{num}/{den}")
        }
    }
}

fn superscript(n: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

pub fn subscript(n: u8) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

/// `Π φ^primed = Π ψ^unprimed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatioEquality {
    pub primed: Monomial,
    pub unprimed: Monomial,
}

/// Relative tolerance for comparing the two sides.
pub const EQUALITY_TOL: f64 = 1e-7;

impl RatioEquality {
    pub fn holds(&self, source: &ThreeQubitPureState, target: &ThreeQubitPureState) -> bool {
        let lhs = self.primed.evaluate(target);
        let rhs = self.unprimed.evaluate(source);
        (lhs - rhs).norm() <= EQUALITY_TOL * lhs.norm().max(rhs.norm())
    }

    /// Same condition with both sides inverted.
    pub fn inverted(&self) -> Self {
        RatioEquality {
            primed: self.primed.inverse(),
            unprimed: self.unprimed.inverse(),
        }
    }

    /// Representative with the lexicographically larger unprimed side, so that a
    /// condition and its both-sides inversion compare equal.
    pub fn canonical(&self) -> Self {
        let inv = self.inverted();
        if inv.unprimed > self.unprimed {
            inv
        } else {
            *self
        }
    }

    pub fn render(&self, support: SupportPattern) -> String {
        format!(
            "{}={}",
            self.primed.render(support, true),
            self.unprimed.render(support, false)
        )
    }
}

/// All equalities must hold.
pub type Conjunction = Vec<RatioEquality>;

pub fn render_conjunction(c: &[RatioEquality], support: SupportPattern) -> String {
    let mut s = String::new();
    for (i, e) in c.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{}", e.render(support));
    }
    s
}

// Copyright 2026 The wres authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Noncommutative Clifford-word algebra over `Scalar` with canonical ordering
//! and the spinor trace. Generators c(dx_1)..c(dx_4) are tangential, c(dx_5)
//! is the normal direction; the relation is c(e_i)c(e_j) + c(e_j)c(e_i) =
//! -2 delta_ij, so every square is -1 and the trace of the empty word is 4.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::coeff::{grat, GRat, ParamSymbol, Scalar};

/// Canonically ordered product of distinct generators, stored as a bitmask
/// (bit `i` set means generator `i+1` is present; index 5 is dx_n).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct CliffordWord(pub u8);

impl CliffordWord {
    pub const EMPTY: CliffordWord = CliffordWord(0);

    pub fn generator(i: u8) -> CliffordWord {
        debug_assert!((1..=5).contains(&i));
        CliffordWord(1 << (i - 1))
    }

    pub fn len(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn generators(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=5u8).filter(move |i| self.0 & (1 << (i - 1)) != 0)
    }

    /// Number of tangential generators (indices 1..4) in the word.
    pub fn tangential_count(&self) -> u32 {
        (self.0 & 0b1111).count_ones()
    }
}

/// Multiplies two canonical words; returns the sign and the resulting word.
pub fn word_mul(a: CliffordWord, b: CliffordWord) -> (i8, CliffordWord) {
    let mut sign = 1i8;
    let mut acc = a.0;
    for g in 0..5u8 {
        if b.0 & (1 << g) != 0 {
            let higher = acc >> (g + 1);
            if higher.count_ones() % 2 == 1 {
                sign = -sign;
            }
            if acc & (1 << g) != 0 {
                sign = -sign; // generator square is -1
                acc &= !(1 << g);
            } else {
                acc |= 1 << g;
            }
        }
    }
    (sign, CliffordWord(acc))
}

/// Linear combination of canonical Clifford words with `Scalar` coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CliffordElement {
    terms: BTreeMap<CliffordWord, Scalar>,
}

impl CliffordElement {
    pub fn zero() -> Self {
        CliffordElement::default()
    }

    pub fn one() -> Self {
        CliffordElement::from_scalar(Scalar::one())
    }

    pub fn from_scalar(s: Scalar) -> Self {
        let mut e = CliffordElement::default();
        e.add_word(CliffordWord::EMPTY, s);
        e
    }

    /// The generator c(dx_i), i in 1..=5.
    pub fn generator(i: u8) -> Self {
        let mut e = CliffordElement::default();
        e.add_word(CliffordWord::generator(i), Scalar::one());
        e
    }

    /// c(xi') = sum_j xi_j c(dx_j) over the four tangential directions.
    pub fn c_xi_prime() -> Self {
        let mut e = CliffordElement::default();
        for j in 0..4usize {
            e.add_word(CliffordWord::generator(j as u8 + 1), Scalar::xi_var(j));
        }
        e
    }

    /// c(dx_n), the normal generator.
    pub fn c_dxn() -> Self {
        CliffordElement::generator(5)
    }

    /// c(X) = sum_j X_j c(dx_j) + a_n c(dx_n) at the base point.
    pub fn c_x() -> Self {
        let mut e = CliffordElement::default();
        for j in 1..=4u8 {
            e.add_word(
                CliffordWord::generator(j),
                Scalar::param(ParamSymbol::X(j)),
            );
        }
        e.add_word(CliffordWord::generator(5), Scalar::param(ParamSymbol::An));
        e
    }

    pub fn add_word(&mut self, w: CliffordWord, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(s);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let mut v = e.get().clone();
                v += &s;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = (&CliffordWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: CliffordWord) -> Scalar {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        let mut out = CliffordElement::default();
        for (w, c) in &self.terms {
            out.add_word(*w, c * s);
        }
        out
    }

    pub fn scaled_grat(&self, g: &GRat) -> Self {
        let mut out = CliffordElement::default();
        for (w, c) in &self.terms {
            out.add_word(*w, c.scaled(g));
        }
        out
    }

    pub fn map_scalars(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut out = CliffordElement::default();
        for (w, c) in &self.terms {
            out.add_word(*w, f(c));
        }
        out
    }

    /// The spinor trace over the 4-dimensional spinor space: tr[1] = 4 and
    /// every nonempty canonical word is traceless.
    pub fn trace(&self) -> Scalar {
        self.coeff(CliffordWord::EMPTY).scaled(&grat(4, 1))
    }

    /// Normal-direction jet of the frame factor: every tangential generator
    /// scales like sqrt(h(x_n)), the normal generator is x_n-independent.
    /// Order 1 multiplies each word by (#tangential) * H1/2; order 2 applies
    /// the exact second jet of the product of sqrt(h) factors.
    pub fn jet_derivative(&self, order: u8) -> Self {
        assert!(order == 1 || order == 2, "jet order must be 1 or 2");
        let h1 = Scalar::param(ParamSymbol::H1);
        let h2 = Scalar::param(ParamSymbol::H2);
        let mut out = CliffordElement::default();
        for (w, c) in &self.terms {
            let k = w.tangential_count() as i64;
            if k == 0 {
                continue;
            }
            let factor = match order {
                1 => h1.scaled(&grat(k, 2)),
                _ => {
                    // k * (sqrt h)'' + k(k-1) ((sqrt h)')^2 at h(0)=1:
                    //   k (H2/2 - H1^2/4) + k(k-1) H1^2/4
                    let mut f = h2.scaled(&grat(k, 2));
                    f += &(&h1 * &h1).scaled(&grat(k * (k - 1) - k, 4));
                    f
                }
            };
            out.add_word(*w, c * &factor);
        }
        out
    }

    pub fn words_vec(&self) -> Vec<(CliffordWord, Scalar)> {
        self.terms.iter().map(|(w, s)| (*w, s.clone())).collect()
    }
}

impl AddAssign<&CliffordElement> for CliffordElement {
    fn add_assign(&mut self, rhs: &CliffordElement) {
        for (w, s) in &rhs.terms {
            self.add_word(*w, s.clone());
        }
    }
}

impl Add for &CliffordElement {
    type Output = CliffordElement;
    fn add(self, rhs: &CliffordElement) -> CliffordElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &CliffordElement {
    type Output = CliffordElement;
    fn sub(self, rhs: &CliffordElement) -> CliffordElement {
        let mut out = self.clone();
        for (w, s) in &rhs.terms {
            out.add_word(*w, -s);
        }
        out
    }
}

impl Neg for &CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        self.scaled_grat(&grat(-1, 1))
    }
}

impl Mul for &CliffordElement {
    type Output = CliffordElement;
    fn mul(self, rhs: &CliffordElement) -> CliffordElement {
        let mut out = CliffordElement::default();
        for (w1, s1) in &self.terms {
            for (w2, s2) in &rhs.terms {
                let (sign, w) = word_mul(*w1, *w2);
                let mut s = s1 * s2;
                if sign < 0 {
                    s = s.scaled(&grat(-1, 1));
                }
                out.add_word(w, s);
            }
        }
        out
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, s) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{s}]")?;
            for g in w.generators() {
                if g == 5 {
                    write!(f, " c(dxn)")?;
                } else {
                    write!(f, " c(dx{g})")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::xi_norm_sq;

    #[test]
    fn generator_square() {
        let c1 = CliffordElement::generator(1);
        let sq = &c1 * &c1;
        assert_eq!(sq, CliffordElement::from_scalar(Scalar::from_int(-1)));
    }

    #[test]
    fn anticommutation() {
        let c1 = CliffordElement::generator(1);
        let c2 = CliffordElement::generator(2);
        let ab = &c1 * &c2;
        let ba = &c2 * &c1;
        assert_eq!(ba, -&ab);
    }

    #[test]
    fn c_xi_prime_square() {
        // c(xi')^2 = -|xi'|^2 with |xi'|^2 expanded as sum of squares
        let c = CliffordElement::c_xi_prime();
        let sq = &c * &c;
        let expect = CliffordElement::from_scalar(-&xi_norm_sq());
        assert_eq!(sq, expect);
    }

    #[test]
    fn four_letter_trace() {
        // tr[c1 c2 c1 c2] = -4: anticommute once, two squares
        let c1 = CliffordElement::generator(1);
        let c2 = CliffordElement::generator(2);
        let p = &(&(&c1 * &c2) * &c1) * &c2;
        assert_eq!(p.trace(), Scalar::from_int(-4));
    }

    #[test]
    fn trace_identities() {
        // the trace identity block used throughout the case computations
        let cxi = CliffordElement::c_xi_prime();
        let cn = CliffordElement::c_dxn();
        let cx = CliffordElement::c_x();

        // tr[c(xi') c(dxn)] = 0
        assert!((&cxi * &cn).trace().is_zero());
        // tr[c(dxn)^2] = -4
        assert_eq!((&cn * &cn).trace(), Scalar::from_int(-4));
        // tr[c(xi')^2] = -4 |xi'|^2 (equals -4 on the cosphere)
        assert_eq!(
            (&cxi * &cxi).trace(),
            xi_norm_sq().scaled(&grat(-4, 1))
        );
        // tr[d/dxn c(xi') c(dxn)] = 0
        assert!((&cxi.jet_derivative(1) * &cn).trace().is_zero());
        // tr[d/dxn c(xi') x c(xi')] = -2 h'(0) |xi'|^2
        let lhs = (&cxi.jet_derivative(1) * &cxi).trace();
        let expect = (&Scalar::param(ParamSymbol::H1) * &xi_norm_sq()).scaled(&grat(-2, 1));
        assert_eq!(lhs, expect);
        // tr[c(xi') c(X)] = -4 sum_j X_j xi_j
        let lhs = (&cxi * &cx).trace();
        let mut g = Scalar::zero();
        for j in 0..4usize {
            g += &(&Scalar::param(ParamSymbol::X(j as u8 + 1)) * &Scalar::xi_var(j));
        }
        assert_eq!(lhs, g.scaled(&grat(-4, 1)));
    }

    #[test]
    fn odd_words_traceless() {
        for bits in 1..32u8 {
            let w = CliffordWord(bits);
            if w.len() % 2 == 1 {
                let mut e = CliffordElement::default();
                e.add_word(w, Scalar::one());
                assert!(e.trace().is_zero());
            }
        }
    }

    #[test]
    fn second_jet_of_generator() {
        let c1 = CliffordElement::generator(1);
        let d2 = c1.jet_derivative(2);
        let h1 = Scalar::param(ParamSymbol::H1);
        let h2 = Scalar::param(ParamSymbol::H2);
        let mut expect = h2.scaled(&grat(1, 2));
        expect += &(&h1 * &h1).scaled(&grat(-1, 4));
        assert_eq!(d2, c1.scaled(&expect));
    }

    #[test]
    fn second_jet_leibniz() {
        // on a two-generator word the generic formula must match Leibniz
        let c1 = CliffordElement::generator(1);
        let c2 = CliffordElement::generator(2);
        let w = &c1 * &c2;
        let lhs = w.jet_derivative(2);
        let mut rhs = &c1.jet_derivative(2) * &c2;
        rhs += &(&c1.jet_derivative(1) * &c2.jet_derivative(1)).scaled(&Scalar::from_int(2));
        rhs += &(&c1 * &c2.jet_derivative(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_generator_constant() {
        assert!(CliffordElement::c_dxn().jet_derivative(1).is_zero());
        assert!(CliffordElement::c_dxn().jet_derivative(2).is_zero());
    }
}

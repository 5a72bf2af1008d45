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

//! Exact commutative coefficient ring: Gaussian rationals with a pi-power
//! grade times polynomials in the formal geometric parameters, the tangential
//! covariables xi_1..xi_4, and the formal symbol |xi'|^2.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{EngineError, Result};

/// Exact Gaussian rational: complex number with rational real and imaginary
/// parts. The engine's coefficient field.
pub type GRat = Complex<BigRational>;

/// `n/d` as a rational.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `n/d` as a Gaussian rational.
pub fn grat(n: i64, d: i64) -> GRat {
    Complex::new(rat(n, d), BigRational::zero())
}

/// `(re_n/re_d) + (im_n/im_d) i`.
pub fn grat_c(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> GRat {
    Complex::new(rat(re_n, re_d), rat(im_n, im_d))
}

/// The imaginary unit.
pub fn gi() -> GRat {
    Complex::new(BigRational::zero(), BigRational::one())
}

/// `i^k` for any integer `k`.
pub fn gi_pow(k: i64) -> GRat {
    match k.rem_euclid(4) {
        0 => grat(1, 1),
        1 => gi(),
        2 => grat(-1, 1),
        _ => -gi(),
    }
}

/// Renders a Gaussian rational like `3/16-5/32i`.
pub fn grat_to_string(v: &GRat) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    let re_zero = v.re.is_zero();
    let im_zero = v.im.is_zero();
    if re_zero && im_zero {
        return String::from("0");
    }
    if !re_zero {
        let _ = write!(s, "{}", v.re);
    }
    if !im_zero {
        if !re_zero && v.im.is_positive() {
            s.push('+');
        }
        if v.im == -BigRational::one() {
            s.push('-');
        } else if v.im != BigRational::one() {
            let _ = write!(s, "{}", v.im);
        }
        s.push('i');
    }
    s
}

/// Formal geometric parameters carried by scalar coefficients.
///
/// `H1`, `H2` are the first and second normal jets of the collar warp factor
/// at the boundary point; `An`/`DAn` the normal component of the one-form and
/// its normal derivative; `X(j)` the tangential components; `DX(k, j)` the
/// formal first derivative of component `j` along direction `k` (direction 5
/// is normal, component 5 is the normal component). Curvature symbols are
/// stored only in canonical index order (see `sphere`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum ParamSymbol {
    H1,
    H2,
    An,
    DAn,
    Sb,
    Sm,
    K,
    NormXp2,
    X(u8),
    DX(u8, u8),
    Riem(u8, u8, u8, u8),
    Ricci(u8, u8),
}

impl ParamSymbol {
    /// Canonical constructor for derivative symbols: `DX(5,5)` is `DAn` and
    /// `X(5)` callers should use `An`.
    pub fn dx(dir: u8, comp: u8) -> ParamSymbol {
        debug_assert!((1..=5).contains(&dir) && (1..=5).contains(&comp));
        if dir == 5 && comp == 5 {
            ParamSymbol::DAn
        } else {
            ParamSymbol::DX(dir, comp)
        }
    }

    fn label(&self) -> String {
        use alloc::format;
        match self {
            ParamSymbol::H1 => String::from("h1"),
            ParamSymbol::H2 => String::from("h2"),
            ParamSymbol::An => String::from("an"),
            ParamSymbol::DAn => String::from("dan"),
            ParamSymbol::Sb => String::from("s_bd"),
            ParamSymbol::Sm => String::from("s_M"),
            ParamSymbol::K => String::from("K"),
            ParamSymbol::NormXp2 => String::from("|X'|^2"),
            ParamSymbol::X(j) => format!("X{j}"),
            ParamSymbol::DX(k, j) => format!("dX[{k}][{j}]"),
            ParamSymbol::Riem(i, j, k, l) => format!("R[{i}{j}{k}{l}]"),
            ParamSymbol::Ricci(i, j) => format!("Ric[{i}{j}]"),
        }
    }
}

/// A monomial key: parameter powers, xi'-exponents, |xi'|^2 power, pi power.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default, Hash)]
pub struct Monomial {
    pub params: BTreeMap<ParamSymbol, u32>,
    pub xi: [u32; 4],
    pub sp: u32,
    pub pi: i32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn param(p: ParamSymbol) -> Self {
        let mut m = Monomial::default();
        m.params.insert(p, 1);
        m
    }

    pub fn xi_var(j: usize) -> Self {
        let mut m = Monomial::default();
        m.xi[j] += 1;
        m
    }

    pub fn merged(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (p, e) in &other.params {
            *out.params.entry(*p).or_insert(0) += e;
        }
        for j in 0..4 {
            out.xi[j] += other.xi[j];
        }
        out.sp += other.sp;
        out.pi += other.pi;
        out
    }

    pub fn xi_degree(&self) -> u32 {
        self.xi.iter().sum()
    }

    pub fn param_degree(&self) -> u32 {
        self.params.values().sum()
    }
}

/// A finite sum of monomials with Gaussian-rational coefficients. Zero
/// coefficients are never stored; maps keep everything canonically ordered.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Scalar {
    terms: BTreeMap<Monomial, GRat>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_grat(grat(1, 1))
    }

    pub fn from_grat(c: GRat) -> Self {
        let mut s = Scalar::default();
        s.add_term(Monomial::one(), c);
        s
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_grat(grat(n, 1))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_grat(grat(n, d))
    }

    pub fn i() -> Self {
        Scalar::from_grat(gi())
    }

    pub fn param(p: ParamSymbol) -> Self {
        let mut s = Scalar::default();
        s.add_term(Monomial::param(p), grat(1, 1));
        s
    }

    /// The tangential covariable `xi_j` (j = 0..3).
    pub fn xi_var(j: usize) -> Self {
        let mut s = Scalar::default();
        s.add_term(Monomial::xi_var(j), grat(1, 1));
        s
    }

    /// The formal symbol |xi'|^2.
    pub fn sp() -> Self {
        let mut s = Scalar::default();
        let mut m = Monomial::one();
        m.sp = 1;
        s.add_term(m, grat(1, 1));
        s
    }

    /// A bare power of pi.
    pub fn pi_pow(k: i32) -> Self {
        let mut s = Scalar::default();
        let mut m = Monomial::one();
        m.pi = k;
        s.add_term(m, grat(1, 1));
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: GRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn scaled(&self, c: &GRat) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        let mut out = Scalar::default();
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn mul_pi(&self, k: i32) -> Scalar {
        let mut out = Scalar::default();
        for (m, v) in &self.terms {
            let mut m2 = m.clone();
            m2.pi += k;
            out.terms.insert(m2, v.clone());
        }
        out
    }

    /// Exact derivative with respect to `xi_j` (j = 0..3), treating |xi'|^2
    /// as Sum xi_k^2 (so its derivative is 2 xi_j).
    pub fn deriv_xi(&self, j: usize) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            if m.xi[j] > 0 {
                let mut m2 = m.clone();
                m2.xi[j] -= 1;
                out.add_term(m2, c.clone() * grat(m.xi[j] as i64, 1));
            }
            if m.sp > 0 {
                let mut m2 = m.clone();
                m2.sp -= 1;
                m2.xi[j] += 1;
                out.add_term(m2, c.clone() * grat(2 * m.sp as i64, 1));
            }
        }
        out
    }

    /// Restriction to the unit cosphere: |xi'|^2 -> 1.
    pub fn restrict_sp(&self) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.sp = 0;
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Substitutes a parameter by a scalar polynomial. Rejects rules whose
    /// replacement mentions the substituted symbol.
    pub fn substitute(&self, p: ParamSymbol, replacement: &Scalar) -> Result<Scalar> {
        for (m, _) in replacement.terms() {
            if m.params.contains_key(&p) {
                return Err(EngineError::SubstitutionCycle(p));
            }
        }
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let e = m.params.get(&p).copied().unwrap_or(0);
            let mut base = m.clone();
            base.params.remove(&p);
            let mut piece = Scalar::zero();
            piece.add_term(base, c.clone());
            for _ in 0..e {
                piece = &piece * replacement;
            }
            out += &piece;
        }
        Ok(out)
    }

    /// Leibniz derivation over parameters given by `rule` (used for formal
    /// tangential derivatives of the one-form components).
    pub fn derive_params(&self, rule: impl Fn(ParamSymbol) -> Option<Scalar>) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            for (p, e) in &m.params {
                if let Some(dp) = rule(*p) {
                    let mut base = m.clone();
                    if *e == 1 {
                        base.params.remove(p);
                    } else {
                        base.params.insert(*p, e - 1);
                    }
                    let mut piece = Scalar::zero();
                    piece.add_term(base, c.clone() * grat(*e as i64, 1));
                    out += &(&piece * &dp);
                }
            }
        }
        out
    }

    pub fn contains_param(&self, f: impl Fn(ParamSymbol) -> bool) -> bool {
        self.terms
            .keys()
            .any(|m| m.params.keys().any(|p| f(*p)))
    }

    /// The pi grade, if the scalar is homogeneous in pi.
    pub fn pi_grade(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|m| m.pi);
        let first = it.next()?;
        if it.all(|g| g == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Exact evaluation at a rational point (xi values and parameter values).
    /// Requires pi grade zero on every term.
    pub fn eval(
        &self,
        xi: &[GRat; 4],
        sp: &GRat,
        assign: &impl Fn(ParamSymbol) -> Option<GRat>,
    ) -> Result<GRat> {
        let mut acc = GRat::zero();
        for (m, c) in &self.terms {
            debug_assert_eq!(m.pi, 0, "eval on pi-graded scalar");
            let mut v = c.clone();
            for (p, e) in &m.params {
                let pv = assign(*p).ok_or(EngineError::MissingAssignment(*p))?;
                for _ in 0..*e {
                    v = v * pv.clone();
                }
            }
            for j in 0..4 {
                for _ in 0..m.xi[j] {
                    v = v * xi[j].clone();
                }
            }
            for _ in 0..m.sp {
                v = v * sp.clone();
            }
            acc = acc + v;
        }
        Ok(acc)
    }

    /// Float evaluation, with pi supplied numerically (quadrature oracle).
    pub fn eval_f64(
        &self,
        xi: &[f64; 4],
        sp: f64,
        assign: &impl Fn(ParamSymbol) -> Option<f64>,
    ) -> Result<(f64, f64)> {
        let to_f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (m, c) in &self.terms {
            let mut v_re = to_f(&c.re);
            let mut v_im = to_f(&c.im);
            let mut factor = 1.0f64;
            for (p, e) in &m.params {
                let pv = assign(*p).ok_or(EngineError::MissingAssignment(*p))?;
                factor *= libm_pow(pv, *e);
            }
            for j in 0..4 {
                factor *= libm_pow(xi[j], m.xi[j]);
            }
            factor *= libm_pow(sp, m.sp);
            factor *= libm_pow(core::f64::consts::PI, m.pi.unsigned_abs());
            if m.pi < 0 {
                factor = 1.0 / factor;
            }
            v_re *= factor;
            v_im *= factor;
            re += v_re;
            im += v_im;
        }
        Ok((re, im))
    }

    /// If the scalar is a single constant (no params, xi, sp), returns it.
    pub fn as_constant(&self) -> Option<GRat> {
        if self.terms.is_empty() {
            return Some(GRat::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.params.is_empty() && m.xi == [0; 4] && m.sp == 0 {
                let mut out = c.clone();
                if m.pi != 0 {
                    return None;
                }
                out = out.clone();
                return Some(out);
            }
        }
        None
    }
}

fn libm_pow(x: f64, e: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.scaled(&grat(-1, 1))
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.merged(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", grat_to_string(c))?;
            for (p, e) in &m.params {
                if *e == 1 {
                    write!(f, " {}", p.label())?;
                } else {
                    write!(f, " {}^{}", p.label(), e)?;
                }
            }
            for (j, e) in m.xi.iter().enumerate() {
                if *e == 1 {
                    write!(f, " xi{}", j + 1)?;
                } else if *e > 1 {
                    write!(f, " xi{}^{}", j + 1, e)?;
                }
            }
            if m.sp == 1 {
                write!(f, " |xi'|^2")?;
            } else if m.sp > 1 {
                write!(f, " |xi'|^{}", 2 * m.sp)?;
            }
            if m.pi == 1 {
                write!(f, " pi")?;
            } else if m.pi != 0 {
                write!(f, " pi^{}", m.pi)?;
            }
        }
        Ok(())
    }
}

/// Sum of `xi_j^2` over the four tangential directions (the expanded form of
/// |xi'|^2 produced by Clifford squares).
pub fn xi_norm_sq() -> Scalar {
    let mut s = Scalar::zero();
    for j in 0..4 {
        let mut m = Monomial::one();
        m.xi[j] = 2;
        s.add_term(m, grat(1, 1));
    }
    s
}

/// Collects a scalar into (coefficient, monomial) pairs for reporting.
pub fn scalar_parts(s: &Scalar) -> Vec<(Monomial, GRat)> {
    s.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_grade_adds_under_mul() {
        // (1/2) pi^2 * 1 pi = (1/2) pi^3
        let a = Scalar::from_ratio(1, 2).mul_pi(2);
        let b = Scalar::one().mul_pi(1);
        let c = &a * &b;
        assert_eq!(c.pi_grade(), Some(3));
        assert_eq!(c, Scalar::from_ratio(1, 2).mul_pi(3));
    }

    #[test]
    fn xi_commutes() {
        let x1 = Scalar::xi_var(0);
        let x2 = Scalar::xi_var(1);
        let p = &(&x1 * &x2) + &(&x2 * &x1);
        assert_eq!(p, (&x1 * &x2).scaled(&grat(2, 1)));
    }

    #[test]
    fn h1_square() {
        let h1 = Scalar::param(ParamSymbol::H1);
        let sq = &h1 * &h1;
        let (m, _) = sq.terms().next().unwrap();
        assert_eq!(m.params.get(&ParamSymbol::H1), Some(&2));
    }

    #[test]
    fn substitute_square() {
        // H1 -> -K/2 applied to H1^2 gives K^2/4
        let h1 = Scalar::param(ParamSymbol::H1);
        let sq = &h1 * &h1;
        let rule = Scalar::param(ParamSymbol::K).scaled(&grat(-1, 2));
        let out = sq.substitute(ParamSymbol::H1, &rule).unwrap();
        let expect = (&Scalar::param(ParamSymbol::K) * &Scalar::param(ParamSymbol::K))
            .scaled(&grat(1, 4));
        assert_eq!(out, expect);
    }

    #[test]
    fn substitute_lemma_rule() {
        // H2 -> (3 H1^2 + SB - SM)/4 applied to H2 gives exactly that
        let h2 = Scalar::param(ParamSymbol::H2);
        let h1 = Scalar::param(ParamSymbol::H1);
        let mut rule = (&h1 * &h1).scaled(&grat(3, 4));
        rule += &Scalar::param(ParamSymbol::Sb).scaled(&grat(1, 4));
        rule += &Scalar::param(ParamSymbol::Sm).scaled(&grat(-1, 4));
        let out = h2.substitute(ParamSymbol::H2, &rule).unwrap();
        assert_eq!(out, rule);
    }

    #[test]
    fn substitute_cycle_rejected() {
        let h1 = Scalar::param(ParamSymbol::H1);
        let bad = &h1 + &Scalar::one();
        assert!(matches!(
            h1.substitute(ParamSymbol::H1, &bad),
            Err(EngineError::SubstitutionCycle(_))
        ));
    }

    #[test]
    fn substitute_is_ring_hom() {
        let h1 = Scalar::param(ParamSymbol::H1);
        let an = Scalar::param(ParamSymbol::An);
        let a = &(&h1 * &h1) + &an;
        let b = &h1 + &Scalar::from_int(3);
        let rule = &Scalar::param(ParamSymbol::K).scaled(&grat(-1, 2)) + &Scalar::one();
        let lhs = (&a * &b).substitute(ParamSymbol::H1, &rule).unwrap();
        let rhs = &a.substitute(ParamSymbol::H1, &rule).unwrap()
            * &b.substitute(ParamSymbol::H1, &rule).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sp_derivative() {
        // d/dxi_1 |xi'|^4 = 4 xi_1 |xi'|^2
        let sp2 = &Scalar::sp() * &Scalar::sp();
        let d = sp2.deriv_xi(0);
        let expect = &(&Scalar::xi_var(0) * &Scalar::sp()).scaled(&grat(4, 1)) * &Scalar::one();
        assert_eq!(d, expect);
    }

    #[test]
    fn norm_x_split() {
        // -(1/2)|X|^2 * 2 with |X|^2 -> |X'|^2 + an^2 gives -|X'|^2 - an^2
        let xp2 = Scalar::param(ParamSymbol::NormXp2);
        let an2 = &Scalar::param(ParamSymbol::An) * &Scalar::param(ParamSymbol::An);
        let x2 = &xp2 + &an2;
        let v = x2.scaled(&grat(-1, 2)).scaled(&grat(2, 1));
        assert_eq!(v, &(-&xp2) + &(-&an2));
    }
}

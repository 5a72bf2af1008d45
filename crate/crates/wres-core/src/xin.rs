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

//! Rational-function calculus in the normal covariable xi_n: denominators are
//! powers of |xi|^2 = |xi'|^2 + xi_n^2 before restriction to the cosphere and
//! powers of (xi_n - i)(xi_n + i) after; partial fractions over the poles +-i
//! drive the pi^+ projection and the residue evaluation of the line integral.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::{gi, grat, GRat, Scalar};
use crate::{EngineError, Result};

/// Denominator mode: a power of |xi|^2 (pre-restriction) or explicit pole
/// orders at +i and -i (post-restriction).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Den {
    Abs(u32),
    Poles { plus: u32, minus: u32 },
}

/// Rational function of xi_n with `Scalar` coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XiRational {
    /// Coefficient of xi_n^k at index k.
    num: Vec<Scalar>,
    den: Den,
}

fn trim(num: &mut Vec<Scalar>) {
    while num.last().is_some_and(Scalar::is_zero) {
        num.pop();
    }
}

fn poly_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); a.len().max(b.len())];
    for (k, s) in a.iter().enumerate() {
        out[k] += s;
    }
    for (k, s) in b.iter().enumerate() {
        out[k] += s;
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, sa) in a.iter().enumerate() {
        if sa.is_zero() {
            continue;
        }
        for (j, sb) in b.iter().enumerate() {
            out[i + j] += &(sa * sb);
        }
    }
    trim(&mut out);
    out
}

fn poly_scale(a: &[Scalar], c: &GRat) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = a.iter().map(|s| s.scaled(c)).collect();
    trim(&mut out);
    out
}

/// (xi_n - root) as a coefficient vector.
fn linear(root: &GRat) -> Vec<Scalar> {
    vec![Scalar::from_grat(-root.clone()), Scalar::one()]
}

fn grat_pow(g: &GRat, k: u32) -> GRat {
    let mut acc = grat(1, 1);
    for _ in 0..k {
        acc = acc * g.clone();
    }
    acc
}

/// Binomial coefficient C(n, k) for the generalized series (1+z)^(-q).
fn neg_binomial(q: u32, k: u32) -> BigRational {
    // C(-q, k) = (-1)^k C(q+k-1, k)
    let mut acc = BigRational::one();
    for j in 0..k {
        acc = acc * BigRational::from_integer((q + j).into())
            / BigRational::from_integer((j + 1).into());
    }
    if k % 2 == 1 {
        -acc
    } else {
        acc
    }
}

/// Partial-fraction decomposition: pole parts at +i and -i plus a polynomial
/// remainder.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialFractions {
    /// `plus[m-1]` is the coefficient of 1/(xi_n - i)^m.
    pub plus: Vec<Scalar>,
    /// `minus[m-1]` is the coefficient of 1/(xi_n + i)^m.
    pub minus: Vec<Scalar>,
    pub poly: Vec<Scalar>,
}

impl PartialFractions {
    /// Recomposes the decomposition into a single rational function.
    pub fn recompose(&self) -> XiRational {
        let p = self.plus.len() as u32;
        let q = self.minus.len() as u32;
        let ip = gi();
        let im = -gi();
        let mut num: Vec<Scalar> = Vec::new();
        for (idx, c) in self.plus.iter().enumerate() {
            let m = idx as u32 + 1;
            // c/(x-i)^m over common den: c (x-i)^(p-m) (x+i)^q
            let mut t = vec![c.clone()];
            for _ in 0..(p - m) {
                t = poly_mul(&t, &linear(&ip));
            }
            for _ in 0..q {
                t = poly_mul(&t, &linear(&im));
            }
            num = poly_add(&num, &t);
        }
        for (idx, c) in self.minus.iter().enumerate() {
            let m = idx as u32 + 1;
            let mut t = vec![c.clone()];
            for _ in 0..(q - m) {
                t = poly_mul(&t, &linear(&im));
            }
            for _ in 0..p {
                t = poly_mul(&t, &linear(&ip));
            }
            num = poly_add(&num, &t);
        }
        if !self.poly.is_empty() {
            let mut t = self.poly.clone();
            for _ in 0..p {
                t = poly_mul(&t, &linear(&ip));
            }
            for _ in 0..q {
                t = poly_mul(&t, &linear(&im));
            }
            num = poly_add(&num, &t);
        }
        XiRational::from_poles(num, p, q)
    }
}

impl XiRational {
    pub fn from_abs(num: Vec<Scalar>, d: u32) -> Self {
        let mut num = num;
        trim(&mut num);
        XiRational { num, den: Den::Abs(d) }.reduced()
    }

    pub fn from_poles(num: Vec<Scalar>, plus: u32, minus: u32) -> Self {
        let mut num = num;
        trim(&mut num);
        XiRational {
            num,
            den: Den::Poles { plus, minus },
        }
        .reduced()
    }

    pub fn zero() -> Self {
        XiRational {
            num: Vec::new(),
            den: Den::Poles { plus: 0, minus: 0 },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn den(&self) -> Den {
        self.den
    }

    pub fn num(&self) -> &[Scalar] {
        &self.num
    }

    pub fn degree(&self) -> Option<usize> {
        if self.num.is_empty() {
            None
        } else {
            Some(self.num.len() - 1)
        }
    }

    /// Evaluates the numerator polynomial at a Gaussian-rational point.
    fn num_at(&self, x: &GRat) -> Scalar {
        let mut acc = Scalar::zero();
        let mut pw = grat(1, 1);
        for c in &self.num {
            acc += &c.scaled(&pw);
            pw = pw * x.clone();
        }
        acc
    }

    /// Synthetic division of the numerator by (xi_n - root); remainder must
    /// vanish (checked by the caller via `num_at`).
    fn num_div_linear(&self, root: &GRat) -> Vec<Scalar> {
        let n = self.num.len();
        if n == 0 {
            return Vec::new();
        }
        let mut out = vec![Scalar::zero(); n - 1];
        let mut carry = Scalar::zero();
        for k in (0..n).rev() {
            let mut c = self.num[k].clone();
            c += &carry;
            if k == 0 {
                break;
            }
            out[k - 1] = c.clone();
            carry = c.scaled(root);
        }
        out
    }

    /// Cancels numerator multiples of the denominator to keep pole orders
    /// minimal. For the Abs mode this divides by xi_n^2 + |xi'|^2; for the
    /// Poles mode it strips exact (xi_n -+ i) factors.
    fn reduced(mut self) -> Self {
        match self.den {
            Den::Abs(ref mut d) => {
                // divide by (xi_n^2 + sp) while the division is exact
                while *d > 0 && self.num.len() >= 3 {
                    let (q, r) = div_by_b(&self.num);
                    if r.iter().all(Scalar::is_zero) {
                        self.num = q;
                        *d -= 1;
                    } else {
                        break;
                    }
                }
                trim(&mut self.num);
            }
            Den::Poles { plus, minus } => {
                let mut plus = plus;
                let mut minus = minus;
                let ip = gi();
                while plus > 0 && !self.num.is_empty() && self.num_at(&ip).is_zero() {
                    self.num = self.num_div_linear(&ip);
                    plus -= 1;
                    trim(&mut self.num);
                }
                let im = -gi();
                while minus > 0 && !self.num.is_empty() && self.num_at(&im).is_zero() {
                    self.num = self.num_div_linear(&im);
                    minus -= 1;
                    trim(&mut self.num);
                }
                self.den = Den::Poles { plus, minus };
            }
        }
        self
    }

    /// Restriction to the unit cosphere: |xi'|^2 -> 1 everywhere, denominator
    /// factored into (xi_n - i)(xi_n + i) powers.
    pub fn restrict_cosphere(&self) -> Result<XiRational> {
        let Den::Abs(d) = self.den else {
            return Err(EngineError::DenominatorMode);
        };
        let num: Vec<Scalar> = self.num.iter().map(Scalar::restrict_sp).collect();
        Ok(XiRational::from_poles(num, d, d))
    }

    /// Exact xi_n-derivative.
    pub fn deriv_xin(&self) -> XiRational {
        let mut dnum = vec![Scalar::zero(); self.num.len().saturating_sub(1)];
        for (k, c) in self.num.iter().enumerate().skip(1) {
            dnum[k - 1] = c.scaled(&grat(k as i64, 1));
        }
        trim(&mut dnum);
        match self.den {
            Den::Abs(d) => {
                if d == 0 {
                    return XiRational::from_abs(dnum, 0);
                }
                // (N' B - 2 d xi_n N) / B^(d+1)
                let b = b_poly();
                let mut t = poly_mul(&dnum, &b);
                let shifted: Vec<Scalar> = core::iter::once(Scalar::zero())
                    .chain(self.num.iter().cloned())
                    .collect();
                t = poly_add(&t, &poly_scale(&shifted, &grat(-2 * d as i64, 1)));
                XiRational::from_abs(t, d + 1)
            }
            Den::Poles { plus, minus } => {
                if plus == 0 && minus == 0 {
                    return XiRational::from_poles(dnum, 0, 0);
                }
                // [N' (x-i)(x+i) - N (p (x+i) + q (x-i))] / ((x-i)^(p+1) (x+i)^(q+1))
                let ip = gi();
                let im = -gi();
                let both = poly_mul(&linear(&ip), &linear(&im));
                let mut t = poly_mul(&dnum, &both);
                let mut corr = poly_scale(&linear(&im), &grat(plus as i64, 1));
                corr = poly_add(&corr, &poly_scale(&linear(&ip), &grat(minus as i64, 1)));
                let corr = poly_mul(&self.num, &corr);
                t = poly_add(&t, &poly_scale(&corr, &grat(-1, 1)));
                XiRational::from_poles(t, plus + 1, minus + 1)
            }
        }
    }

    /// Tangential covariable derivative d/dxi_j (j = 0..3).
    pub fn deriv_xi(&self, j: usize) -> XiRational {
        let dnum: Vec<Scalar> = self.num.iter().map(|s| s.deriv_xi(j)).collect();
        match self.den {
            Den::Abs(d) => {
                if d == 0 {
                    return XiRational::from_abs(dnum, 0);
                }
                // d/dxi_j B = 2 xi_j
                let b = b_poly();
                let mut t = poly_mul(&dnum, &b);
                let xi_j = Scalar::xi_var(j).scaled(&grat(-2 * d as i64, 1));
                let corr: Vec<Scalar> = self.num.iter().map(|s| s * &xi_j).collect();
                t = poly_add(&t, &corr);
                XiRational::from_abs(t, d + 1)
            }
            Den::Poles { plus, minus } => XiRational::from_poles(dnum, plus, minus),
        }
    }

    /// Multiplication; both operands must be in the same denominator mode.
    pub fn try_mul(&self, rhs: &XiRational) -> Result<XiRational> {
        let num = poly_mul(&self.num, &rhs.num);
        match (self.den, rhs.den) {
            (Den::Abs(a), Den::Abs(b)) => Ok(XiRational::from_abs(num, a + b)),
            (Den::Poles { plus: p1, minus: q1 }, Den::Poles { plus: p2, minus: q2 }) => {
                Ok(XiRational::from_poles(num, p1 + p2, q1 + q2))
            }
            _ => Err(EngineError::DenominatorMode),
        }
    }

    pub fn scaled(&self, s: &Scalar) -> XiRational {
        let mut num: Vec<Scalar> = self.num.iter().map(|c| c * s).collect();
        trim(&mut num);
        XiRational { num, den: self.den }.reduced()
    }

    pub fn scaled_grat(&self, g: &GRat) -> XiRational {
        XiRational {
            num: poly_scale(&self.num, g),
            den: self.den,
        }
    }

    /// Series coefficients of num/(xi_n + i)^q around xi_n = i (orders
    /// 0..upto-1); used for both pole parts and residues.
    fn series_plus(&self, upto: usize) -> Vec<Scalar> {
        let Den::Poles { minus: q, .. } = self.den else {
            unreachable!("series on unrestricted function")
        };
        series_around(&self.num, &gi(), q, upto)
    }

    fn series_minus(&self, upto: usize) -> Vec<Scalar> {
        let Den::Poles { plus: p, .. } = self.den else {
            unreachable!("series on unrestricted function")
        };
        series_around(&self.num, &(-gi()), p, upto)
    }

    /// Full partial-fraction decomposition (post-restriction only).
    pub fn partial_fractions(&self) -> Result<PartialFractions> {
        let Den::Poles { plus: p, minus: q } = self.den else {
            return Err(EngineError::DenominatorMode);
        };
        let mut work = self.clone();
        let mut poly = Vec::new();
        if work.num.len() as u32 > p + q {
            // split off the polynomial part by long division by the full den
            let mut den_poly = vec![Scalar::one()];
            for _ in 0..p {
                den_poly = poly_mul(&den_poly, &linear(&gi()));
            }
            for _ in 0..q {
                den_poly = poly_mul(&den_poly, &linear(&(-gi())));
            }
            let (qq, rr) = poly_divmod(&work.num, &den_poly);
            poly = qq;
            work = XiRational {
                num: rr,
                den: work.den,
            };
        }
        let plus_ser = if p > 0 { work.series_plus(p as usize) } else { Vec::new() };
        let minus_ser = if q > 0 { work.series_minus(q as usize) } else { Vec::new() };
        let mut plus = vec![Scalar::zero(); p as usize];
        for (s, c) in plus_ser.into_iter().enumerate() {
            // order s of the series is the 1/(x-i)^(p-s) coefficient
            plus[(p as usize) - 1 - s] = c;
        }
        let mut minus = vec![Scalar::zero(); q as usize];
        for (s, c) in minus_ser.into_iter().enumerate() {
            minus[(q as usize) - 1 - s] = c;
        }
        trim(&mut plus);
        trim(&mut minus);
        Ok(PartialFractions { plus, minus, poly })
    }

    /// The pi^+ projection: the partial-fraction part with poles at +i only.
    /// A nonzero polynomial part is a hard error.
    pub fn pi_plus(&self) -> Result<XiRational> {
        let pf = self.partial_fractions()?;
        if !pf.poly.is_empty() {
            return Err(EngineError::PolynomialPart);
        }
        Ok(PartialFractions {
            plus: pf.plus,
            minus: Vec::new(),
            poly: Vec::new(),
        }
        .recompose())
    }

    /// The complementary projection (poles at -i).
    pub fn pi_minus(&self) -> Result<XiRational> {
        let pf = self.partial_fractions()?;
        if !pf.poly.is_empty() {
            return Err(EngineError::PolynomialPart);
        }
        Ok(PartialFractions {
            minus: pf.minus,
            plus: Vec::new(),
            poly: Vec::new(),
        }
        .recompose())
    }

    /// Integral over the real line via the residue at +i; the result carries
    /// one extra power of pi. Requires decay of order >= 2 at infinity.
    pub fn integrate_line(&self) -> Result<Scalar> {
        let Den::Poles { plus: p, minus: q } = self.den else {
            return Err(EngineError::DenominatorMode);
        };
        if self.num.is_empty() {
            return Ok(Scalar::zero());
        }
        if self.num.len() as u32 + 2 > p + q + 1 {
            return Err(EngineError::InsufficientDecay);
        }
        if p == 0 {
            return Ok(Scalar::zero());
        }
        let res = self.series_plus(p as usize).swap_remove(p as usize - 1);
        // 2 pi i * residue
        Ok(res.scaled(&(gi() * grat(2, 1))).mul_pi(1))
    }

    /// Float evaluation of the function at a real xi_n (quadrature oracle).
    pub fn eval_f64(
        &self,
        xin: f64,
        xi: &[f64; 4],
        assign: &impl Fn(crate::coeff::ParamSymbol) -> Option<f64>,
    ) -> Result<(f64, f64)> {
        let sp = xi.iter().map(|v| v * v).sum::<f64>();
        let mut nre = 0.0;
        let mut nim = 0.0;
        let mut pw = 1.0;
        for c in &self.num {
            let (re, im) = c.eval_f64(xi, sp, assign)?;
            nre += re * pw;
            nim += im * pw;
            pw *= xin;
        }
        match self.den {
            Den::Abs(d) => {
                let b = sp + xin * xin;
                let mut den = 1.0;
                for _ in 0..d {
                    den *= b;
                }
                Ok((nre / den, nim / den))
            }
            Den::Poles { plus, minus } => {
                // (x-i)^p (x+i)^q with real x: compute as complex
                let mut dre = 1.0;
                let mut dim = 0.0;
                for _ in 0..plus {
                    let (r, m) = (dre * xin - dim * (-1.0), dre * (-1.0) + dim * xin);
                    dre = r;
                    dim = m;
                }
                for _ in 0..minus {
                    let (r, m) = (dre * xin - dim * 1.0, dre * 1.0 + dim * xin);
                    dre = r;
                    dim = m;
                }
                let n2 = dre * dre + dim * dim;
                Ok((
                    (nre * dre + nim * dim) / n2,
                    (nim * dre - nre * dim) / n2,
                ))
            }
        }
    }
}

/// The pre-restriction denominator polynomial B = |xi'|^2 + xi_n^2.
fn b_poly() -> Vec<Scalar> {
    vec![Scalar::sp(), Scalar::zero(), Scalar::one()]
}

/// Division of `num` by B = xi_n^2 + |xi'|^2 (monic in xi_n): returns
/// (quotient, remainder of xi_n-degree <= 1).
fn div_by_b(num: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let mut rem: Vec<Scalar> = num.to_vec();
    let mut quot = vec![Scalar::zero(); num.len().saturating_sub(2)];
    for k in (2..rem.len()).rev() {
        let lead = rem[k].clone();
        if lead.is_zero() {
            continue;
        }
        quot[k - 2] = lead.clone();
        rem[k] = Scalar::zero();
        let sub = &lead * &Scalar::sp();
        rem[k - 2] = &rem[k - 2] - &sub;
    }
    let mut rem2 = rem;
    rem2.truncate(2);
    trim(&mut rem2);
    trim(&mut quot);
    (quot, rem2)
}

/// Long division of polynomials with Scalar coefficients by a monic divisor
/// with Gaussian-rational leading coefficient 1 is not guaranteed here, so we
/// require the divisor to be monic (true for our (xi_n -+ i) products).
fn poly_divmod(num: &[Scalar], den: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], Scalar::one(), "divisor must be monic");
    let mut rem: Vec<Scalar> = num.to_vec();
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Scalar::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let lead = rem[k].clone();
        if lead.is_zero() {
            continue;
        }
        quot[k - dd] = lead.clone();
        for (j, dc) in den.iter().enumerate() {
            let sub = &lead * dc;
            rem[k - dd + j] = &rem[k - dd + j] - &sub;
        }
    }
    rem.truncate(dd);
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

/// Taylor coefficients (orders 0..upto-1) of num(x)/(x - other_root)^q around
/// x = center, where other_root is the conjugate pole.
fn series_around(num: &[Scalar], center: &GRat, q: u32, upto: usize) -> Vec<Scalar> {
    // shift the numerator: num(center + u) coefficients
    let mut shifted = vec![Scalar::zero(); num.len().max(1)];
    for (k, c) in num.iter().enumerate() {
        // c * (center + u)^k expanded: sum_s C(k,s) center^(k-s) u^s
        let mut binom = BigRational::one();
        for s in 0..=k {
            if s > 0 {
                binom = binom.clone() * BigRational::from_integer((k + 1 - s).into())
                    / BigRational::from_integer(s.into());
            }
            let coeff = grat_pow(center, (k - s) as u32)
                * GRat::new(binom.clone(), BigRational::zero());
            shifted[s] += &c.scaled(&coeff);
        }
    }
    // inverse factor: 1/(center + u - other_root)^q = 1/(u + 2*center)^q
    // (other_root = -center for the pole pair at +-i)
    let two_c = center.clone() * grat(2, 1);
    let inv_two_c = grat(1, 1) / two_c.clone();
    let mut inv = Vec::with_capacity(upto);
    for k in 0..upto {
        let c = neg_binomial(q, k as u32);
        let v = grat_pow(&inv_two_c, q + k as u32) * GRat::new(c, BigRational::zero());
        inv.push(v);
    }
    let mut out = vec![Scalar::zero(); upto];
    for s in 0..upto {
        for k in 0..=s {
            if k < shifted.len() {
                out[s] += &shifted[k].scaled(&inv[s - k]);
            }
        }
    }
    out
}

impl Add for &XiRational {
    type Output = XiRational;
    fn add(self, rhs: &XiRational) -> XiRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        match (self.den, rhs.den) {
            (Den::Abs(a), Den::Abs(b)) => {
                let d = a.max(b);
                let mut n1 = self.num.clone();
                let mut n2 = rhs.num.clone();
                for _ in 0..(d - a) {
                    n1 = poly_mul(&n1, &b_poly());
                }
                for _ in 0..(d - b) {
                    n2 = poly_mul(&n2, &b_poly());
                }
                XiRational::from_abs(poly_add(&n1, &n2), d)
            }
            (
                Den::Poles { plus: p1, minus: q1 },
                Den::Poles { plus: p2, minus: q2 },
            ) => {
                let p = p1.max(p2);
                let q = q1.max(q2);
                let scale = |num: &[Scalar], dp: u32, dq: u32| {
                    let mut n = num.to_vec();
                    for _ in 0..dp {
                        n = poly_mul(&n, &linear(&gi()));
                    }
                    for _ in 0..dq {
                        n = poly_mul(&n, &linear(&(-gi())));
                    }
                    n
                };
                let n1 = scale(&self.num, p - p1, q - q1);
                let n2 = scale(&rhs.num, p - p2, q - q2);
                XiRational::from_poles(poly_add(&n1, &n2), p, q)
            }
            _ => panic!("adding rationals in different denominator modes"),
        }
    }
}

impl Sub for &XiRational {
    type Output = XiRational;
    fn sub(self, rhs: &XiRational) -> XiRational {
        self + &(-rhs)
    }
}

impl Neg for &XiRational {
    type Output = XiRational;
    fn neg(self) -> XiRational {
        self.scaled_grat(&grat(-1, 1))
    }
}

impl Mul for &XiRational {
    type Output = XiRational;
    fn mul(self, rhs: &XiRational) -> XiRational {
        self.try_mul(rhs).expect("denominator mode mismatch")
    }
}

/// Convenience constructor: num / (1 + xi_n^2)^d after restriction.
pub fn over_one_plus_xin2(num: Vec<Scalar>, d: u32) -> XiRational {
    XiRational::from_poles(num, d, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{grat_c, Scalar};

    fn sc(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn restrict_basic() {
        // 1/|xi|^2 -> 1/((x-i)(x+i))
        let f = XiRational::from_abs(vec![Scalar::one()], 1);
        let r = f.restrict_cosphere().unwrap();
        assert_eq!(r.den(), Den::Poles { plus: 1, minus: 1 });
        // |xi'|^2/|xi|^4 -> 1/((x-i)^2(x+i)^2): the sp factor goes to 1
        let f = XiRational::from_abs(vec![Scalar::sp()], 2);
        let r = f.restrict_cosphere().unwrap();
        assert_eq!(r.den(), Den::Poles { plus: 2, minus: 2 });
        assert_eq!(r.num(), &[Scalar::one()]);
    }

    #[test]
    fn partial_fractions_simple() {
        // 1/(1+x^2) = (-i/2)/(x-i) + (i/2)/(x+i)
        let f = over_one_plus_xin2(vec![Scalar::one()], 1);
        let pf = f.partial_fractions().unwrap();
        assert_eq!(pf.plus, vec![Scalar::from_grat(grat_c(0, 1, -1, 2))]);
        assert_eq!(pf.minus, vec![Scalar::from_grat(grat_c(0, 1, 1, 2))]);
        assert!(pf.poly.is_empty());
        assert_eq!(pf.recompose(), f);
    }

    #[test]
    fn partial_fractions_xn_over_b2() {
        // x/(1+x^2)^2 = (-i/4)/(x-i)^2 + (i/4)/(x+i)^2
        let f = over_one_plus_xin2(vec![Scalar::zero(), Scalar::one()], 2);
        let pf = f.partial_fractions().unwrap();
        assert_eq!(
            pf.plus,
            vec![Scalar::zero(), Scalar::from_grat(grat_c(0, 1, -1, 4))]
        );
        assert_eq!(
            pf.minus,
            vec![Scalar::zero(), Scalar::from_grat(grat_c(0, 1, 1, 4))]
        );
        assert_eq!(pf.recompose(), f);
    }

    #[test]
    fn pi_plus_examples() {
        // pi+ (1/(1+x^2)) = -i/(2(x-i))
        let f = over_one_plus_xin2(vec![Scalar::one()], 1);
        let p = f.pi_plus().unwrap();
        let expect = XiRational::from_poles(vec![Scalar::from_grat(grat_c(0, 1, -1, 2))], 1, 0);
        assert_eq!(p, expect);

        // pi+ (1/(1+x^2)^2) = -i/(4(x-i)) - 1/(4(x-i)^2)
        let f = over_one_plus_xin2(vec![Scalar::one()], 2);
        let p = f.pi_plus().unwrap();
        let pf = p.partial_fractions().unwrap();
        assert_eq!(
            pf.plus,
            vec![
                Scalar::from_grat(grat_c(0, 1, -1, 4)),
                Scalar::from_grat(grat_c(-1, 4, 0, 1))
            ]
        );
        assert!(pf.minus.is_empty());

        // pi+ of something with poles only at -i is zero
        let f = XiRational::from_poles(vec![Scalar::one()], 0, 1);
        assert!(f.pi_plus().unwrap().is_zero());
    }

    #[test]
    fn pi_plus_idempotent_and_complementary() {
        // on a mixed function: x^3/(1+x^2)^3
        let f = over_one_plus_xin2(
            vec![Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()],
            3,
        );
        let p = f.pi_plus().unwrap();
        let m = f.pi_minus().unwrap();
        assert_eq!(p.pi_plus().unwrap(), p);
        assert_eq!(&(&p + &m), &f);
    }

    #[test]
    fn polynomial_part_is_error() {
        // x^2/(1+x^2) has a polynomial part
        let f = over_one_plus_xin2(vec![Scalar::zero(), Scalar::zero(), Scalar::one()], 1);
        assert!(matches!(f.pi_plus(), Err(EngineError::PolynomialPart)));
    }

    #[test]
    fn line_integrals() {
        // int 1/(1+x^2) = pi
        let f = over_one_plus_xin2(vec![Scalar::one()], 1);
        assert_eq!(f.integrate_line().unwrap(), Scalar::one().mul_pi(1));
        // int 1/(1+x^2)^2 = pi/2
        let f = over_one_plus_xin2(vec![Scalar::one()], 2);
        assert_eq!(f.integrate_line().unwrap(), sc(1, 2).mul_pi(1));
        // int 1/(1+x^2)^3 = 3 pi / 8
        let f = over_one_plus_xin2(vec![Scalar::one()], 3);
        assert_eq!(f.integrate_line().unwrap(), sc(3, 8).mul_pi(1));
        // int x^2/(1+x^2)^2 = pi/2
        let f = over_one_plus_xin2(vec![Scalar::zero(), Scalar::zero(), Scalar::one()], 2);
        assert_eq!(f.integrate_line().unwrap(), sc(1, 2).mul_pi(1));
    }

    #[test]
    fn spec_residue_example() {
        // int (-6 x^2 + 8 i x + 6)/((x-i)^6 (x+i)^2) = 5 pi/4
        let num = vec![
            Scalar::from_int(6),
            Scalar::from_grat(grat_c(0, 1, 8, 1)),
            Scalar::from_int(-6),
        ];
        let f = XiRational::from_poles(num, 6, 2);
        assert_eq!(f.integrate_line().unwrap(), sc(5, 4).mul_pi(1));
    }

    #[test]
    fn decay_check() {
        // x/(1+x^2) decays like 1/x: not integrable
        let f = over_one_plus_xin2(vec![Scalar::zero(), Scalar::one()], 1);
        assert!(matches!(
            f.integrate_line(),
            Err(EngineError::InsufficientDecay)
        ));
    }

    #[test]
    fn derivative_examples() {
        // d/dx 1/(x-i) = -1/(x-i)^2
        let f = XiRational::from_poles(vec![Scalar::one()], 1, 0);
        let d = f.deriv_xin();
        let expect = XiRational::from_poles(vec![Scalar::from_int(-1)], 2, 0);
        assert_eq!(d, expect);
        // d/dx (1/(1+x^2)) = -2x/(1+x^2)^2
        let f = over_one_plus_xin2(vec![Scalar::one()], 1);
        let d = f.deriv_xin();
        let expect = over_one_plus_xin2(vec![Scalar::zero(), Scalar::from_int(-2)], 2);
        assert_eq!(d, expect);
        // d/dx (x/(1+x^2)) = (1-x^2)/(1+x^2)^2
        let f = over_one_plus_xin2(vec![Scalar::zero(), Scalar::one()], 1);
        let d = f.deriv_xin();
        let expect = over_one_plus_xin2(
            vec![Scalar::one(), Scalar::zero(), Scalar::from_int(-1)],
            2,
        );
        assert_eq!(d, expect);
    }

    #[test]
    fn derivative_of_integrable_integrates_to_zero() {
        let f = over_one_plus_xin2(vec![Scalar::one(), Scalar::xi_var(0)], 2);
        let d = f.deriv_xin();
        assert!(d.integrate_line().unwrap().is_zero());
    }

    #[test]
    fn third_derivative_structure() {
        // d^3/dx^3 of 1/(1+x^2): numerator (24x - 24x^3) over (1+x^2)^4
        let f = over_one_plus_xin2(vec![Scalar::one()], 1);
        let d3 = f.deriv_xin().deriv_xin().deriv_xin();
        let expect = over_one_plus_xin2(
            vec![
                Scalar::zero(),
                Scalar::from_int(24),
                Scalar::zero(),
                Scalar::from_int(-24),
            ],
            4,
        );
        assert_eq!(d3, expect);
        // d^3/dx^3 of x/(1+x^2): numerator -6x^4 + 36x^2 - 6
        let f = over_one_plus_xin2(vec![Scalar::zero(), Scalar::one()], 1);
        let d3 = f.deriv_xin().deriv_xin().deriv_xin();
        let expect = over_one_plus_xin2(
            vec![
                Scalar::from_int(-6),
                Scalar::zero(),
                Scalar::from_int(36),
                Scalar::zero(),
                Scalar::from_int(-6),
            ],
            4,
        );
        assert_eq!(d3, expect);
    }

    #[test]
    fn abs_mode_reduction() {
        // (x^2 + sp) * 1 / B^2 reduces to 1/B
        let num = vec![Scalar::sp(), Scalar::zero(), Scalar::one()];
        let f = XiRational::from_abs(num, 2);
        assert_eq!(f, XiRational::from_abs(vec![Scalar::one()], 1));
    }
}

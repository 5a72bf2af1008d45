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

//! Independent brute-force validators: a concrete gamma-matrix model of the
//! Clifford algebra with exact complex-rational entries, adaptive quadrature
//! for the xi_n line integrals, the closed-form sphere moments, and seeded
//! random generators for the cross-check trials.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand_core::{RngCore, SeedableRng};

use crate::clifford::{CliffordElement, CliffordWord};
use crate::coeff::{gi, grat, GRat, ParamSymbol, Scalar};
use crate::xin::XiRational;
use crate::{EngineError, Result};

/// 4x4 matrix over the Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat4(pub [[GRat; 4]; 4]);

impl Mat4 {
    pub fn zero() -> Self {
        Mat4(core::array::from_fn(|_| core::array::from_fn(|_| GRat::zero())))
    }

    pub fn identity() -> Self {
        let mut m = Mat4::zero();
        for k in 0..4 {
            m.0[k][k] = grat(1, 1);
        }
        m
    }

    pub fn mul(&self, rhs: &Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for k in 0..4 {
                if self.0[i][k].is_zero() {
                    continue;
                }
                for j in 0..4 {
                    out.0[i][j] =
                        out.0[i][j].clone() + self.0[i][k].clone() * rhs.0[k][j].clone();
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, rhs: &Mat4, c: &GRat) {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] = self.0[i][j].clone() + rhs.0[i][j].clone() * c.clone();
            }
        }
    }

    pub fn trace(&self) -> GRat {
        let mut t = GRat::zero();
        for k in 0..4 {
            t = t + self.0[k][k].clone();
        }
        t
    }

    pub fn anticommutator(&self, rhs: &Mat4) -> Mat4 {
        let mut m = self.mul(rhs);
        let n = rhs.mul(self);
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = m.0[i][j].clone() + n.0[i][j].clone();
            }
        }
        m
    }
}

/// Concrete gamma matrices: i times a Hermitian anticommuting quintuple built
/// from Pauli blocks, so that each square is -Id and tr[Id] = 4.
pub struct GammaRep {
    pub gamma: [Mat4; 5],
}

fn pauli(k: usize) -> [[GRat; 2]; 2] {
    let z = GRat::zero;
    let one = || grat(1, 1);
    match k {
        1 => [[z(), one()], [one(), z()]],
        2 => [[z(), -gi()], [gi(), z()]],
        3 => [[one(), z()], [z(), -one()]],
        _ => [[one(), z()], [z(), one()]],
    }
}

fn kron(a: [[GRat; 2]; 2], b: [[GRat; 2]; 2]) -> Mat4 {
    let mut m = Mat4::zero();
    for i in 0..4 {
        for j in 0..4 {
            m.0[i][j] = a[i / 2][j / 2].clone() * b[i % 2][j % 2].clone();
        }
    }
    m
}

impl GammaRep {
    pub fn new() -> Self {
        let herm = [
            kron(pauli(1), pauli(0)),
            kron(pauli(2), pauli(0)),
            kron(pauli(3), pauli(1)),
            kron(pauli(3), pauli(2)),
            kron(pauli(3), pauli(3)),
        ];
        let gamma = core::array::from_fn(|k| {
            let mut m = Mat4::zero();
            m.add_scaled(&herm[k], &gi());
            m
        });
        GammaRep { gamma }
    }

    /// Checks the defining relations exactly.
    pub fn relations_hold(&self) -> bool {
        for a in 0..5 {
            for b in 0..5 {
                let ac = self.gamma[a].anticommutator(&self.gamma[b]);
                let mut expect = Mat4::zero();
                if a == b {
                    expect.add_scaled(&Mat4::identity(), &grat(-2, 1));
                }
                if ac != expect {
                    return false;
                }
            }
        }
        true
    }

    pub fn word_matrix(&self, w: CliffordWord) -> Mat4 {
        let mut m = Mat4::identity();
        for g in w.generators() {
            m = m.mul(&self.gamma[g as usize - 1]);
        }
        m
    }

    /// Evaluates a Clifford element as a matrix under a rational assignment
    /// and takes the literal matrix trace.
    pub fn oracle_trace(
        &self,
        e: &CliffordElement,
        xi: &[GRat; 4],
        assign: &impl Fn(ParamSymbol) -> Option<GRat>,
    ) -> Result<GRat> {
        let sp = {
            let mut s = GRat::zero();
            for v in xi {
                s = s + v.clone() * v.clone();
            }
            s
        };
        let mut m = Mat4::zero();
        for (w, c) in e.words() {
            let v = c.eval(xi, &sp, assign)?;
            if v.is_zero() {
                continue;
            }
            m.add_scaled(&self.word_matrix(*w), &v);
        }
        Ok(m.trace())
    }
}

impl Default for GammaRep {
    fn default() -> Self {
        GammaRep::new()
    }
}

/// Closed-form even moment over S^3 (the oracle route of the moment table).
pub fn moment_oracle(exps: [u32; 4]) -> BigRational {
    crate::sphere::moment_rational(exps)
}

// ---------------------------------------------------------------------------
// float helpers (no_std-friendly)
// ---------------------------------------------------------------------------

fn fabs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

fn fsqrt(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let mut y = x;
    for _ in 0..64 {
        let next = 0.5 * (y + x / y);
        if fabs(next - y) < 1e-300 {
            return next;
        }
        y = next;
    }
    y
}

/// Adaptive Simpson quadrature of a real function over [a, b].
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        if depth == 0 || fabs(left + right - whole) < 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fb = f(b);
    let fm = f(m);
    let whole = simpson(fa, fm, fb, b - a);
    rec(f, a, b, fa, fm, fb, whole, tol, depth)
}

/// Numeric line integral of a restricted xi_n rational function at a concrete
/// parameter assignment; truncation T chosen so the tail is below 1e-10 for
/// integrands decaying at least like 1/xi^2.
pub fn quadrature_line(
    f: &XiRational,
    xi: &[f64; 4],
    assign: &impl Fn(ParamSymbol) -> Option<f64>,
) -> Result<(f64, f64)> {
    let re = |x: f64| f.eval_f64(x, xi, assign).map(|v| v.0).unwrap_or(f64::NAN);
    let im = |x: f64| f.eval_f64(x, xi, assign).map(|v| v.1).unwrap_or(f64::NAN);
    // probe once so assignment errors surface as errors, not NaN
    f.eval_f64(0.0, xi, assign)?;
    // core interval directly; tails via the substitution x = 1/t, which maps
    // [cut, inf) to (0, 1/cut] with a bounded integrand (decay >= 2)
    let cut = 8.0;
    let eps = 1e-13;
    let mut out_re = 0.0;
    let mut out_im = 0.0;
    for g in [&re as &dyn Fn(f64) -> f64, &im] {
        let tail = |t: f64| (g(1.0 / t) + g(-1.0 / t)) / (t * t);
        let mut acc = adaptive_simpson(&|x| g(x), -cut, cut, 1e-13, 48);
        acc += adaptive_simpson(&tail, eps, 1.0 / cut, 1e-13, 48);
        if g as *const _ == &re as *const _ {
            out_re = acc;
        } else {
            out_im = acc;
        }
    }
    if !(out_re.is_finite() && out_im.is_finite()) {
        return Err(EngineError::InsufficientDecay);
    }
    Ok((out_re, out_im))
}

// ---------------------------------------------------------------------------
// seeded random generation for the cross-check trials
// ---------------------------------------------------------------------------

/// Deterministic, splittable random source for reproducible verification.
pub struct Trials {
    rng: rand_chacha::ChaCha8Rng,
}

impl Trials {
    pub fn new(seed: u64) -> Self {
        Trials {
            rng: rand_chacha::ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn small_int(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.rng.next_u64() % span) as i64
    }

    pub fn rational(&mut self) -> BigRational {
        let n = self.small_int(-9, 9);
        let d = self.small_int(1, 7);
        crate::coeff::rat(n, d)
    }

    pub fn grat(&mut self) -> GRat {
        GRat::new(self.rational(), self.rational())
    }

    pub fn f64_unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Random Clifford element with rational coefficients in a small symbol
    /// alphabet (xi monomials and a few parameters). Words are restricted to
    /// length <= 4: the length-5 volume word acts as an orientation-dependent
    /// scalar in the 4x4 representation (matrix trace -+4i), while the spinor
    /// trace functional the computation uses is its orientation average, 0.
    /// Every case integrand is an even element, so the volume word never
    /// arises in practice.
    pub fn clifford_element(&mut self) -> CliffordElement {
        let mut e = CliffordElement::zero();
        let n_terms = self.small_int(1, 5);
        for _ in 0..n_terms {
            let mut bits = (self.rng.next_u64() % 32) as u8;
            if bits == 0b11111 {
                bits &= !(1 << (self.small_int(0, 4) as u8));
            }
            let w = CliffordWord(bits);
            let mut s = Scalar::from_grat(self.grat());
            match self.small_int(0, 3) {
                1 => s = &s * &Scalar::xi_var(self.small_int(0, 3) as usize),
                2 => s = &s * &Scalar::param(ParamSymbol::H1),
                3 => s = &s * &Scalar::param(ParamSymbol::An),
                _ => {}
            }
            e.add_word(w, s);
        }
        e
    }

    /// Random rational assignment for the small alphabet.
    pub fn assignment(&mut self) -> (impl Fn(ParamSymbol) -> Option<GRat> + Clone, [GRat; 4]) {
        let h1 = GRat::new(self.rational(), BigRational::zero());
        let an = GRat::new(self.rational(), BigRational::zero());
        let xi = core::array::from_fn(|_| GRat::new(self.rational(), BigRational::zero()));
        let f = move |p: ParamSymbol| match p {
            ParamSymbol::H1 => Some(h1.clone()),
            ParamSymbol::An => Some(an.clone()),
            _ => None,
        };
        (f, xi)
    }

    /// Random point on S^3 by rejection sampling from the 4-cube.
    pub fn sphere_point(&mut self) -> [f64; 4] {
        loop {
            let v: [f64; 4] = core::array::from_fn(|_| 2.0 * self.f64_unit() - 1.0);
            let n2: f64 = v.iter().map(|x| x * x).sum();
            if n2 > 1e-6 && n2 <= 1.0 {
                let n = fsqrt(n2);
                return core::array::from_fn(|k| v[k] / n);
            }
        }
    }

    /// Random post-restriction rational function with poles at +-i, built to
    /// decay at infinity (numerator degree <= p + q - 2).
    pub fn xi_rational(&mut self) -> XiRational {
        let p = self.small_int(1, 3) as u32;
        let q = self.small_int(1, 3) as u32;
        let deg = self.small_int(0, (p + q - 2) as i64) as usize;
        let mut num = Vec::with_capacity(deg + 1);
        for _ in 0..=deg {
            num.push(Scalar::from_grat(self.grat()));
        }
        XiRational::from_poles(num, p, q)
    }
}

/// Runs `n` random symbolic-vs-matrix trace comparisons; returns the number
/// of failures (always 0 when the algebra is sound).
pub fn trace_agreement_failures(n: usize, seed: u64) -> usize {
    let rep = GammaRep::new();
    let mut trials = Trials::new(seed);
    let mut failures = 0;
    for _ in 0..n {
        let e = trials.clifford_element();
        let (assign, xi) = trials.assignment();
        let sp = {
            let mut s = GRat::zero();
            for v in &xi {
                s = s + v.clone() * v.clone();
            }
            s
        };
        let symbolic = e.trace().eval(&xi, &sp, &assign).unwrap();
        let concrete = rep.oracle_trace(&e, &xi, &assign).unwrap();
        if symbolic != concrete {
            failures += 1;
        }
    }
    failures
}

/// Runs `n` random trace-cyclicity trials tr(ab) = tr(ba); returns failures.
pub fn cyclicity_failures(n: usize, seed: u64) -> usize {
    let mut trials = Trials::new(seed);
    let mut failures = 0;
    for _ in 0..n {
        let a = trials.clifford_element();
        let b = trials.clifford_element();
        if (&a * &b).trace() != (&b * &a).trace() {
            failures += 1;
        }
    }
    failures
}

/// Monte-Carlo estimate of a sphere moment divided by Vol(S^3).
pub fn monte_carlo_moment(exps: [u32; 4], samples: usize, seed: u64) -> f64 {
    let mut trials = Trials::new(seed);
    let mut acc = 0.0;
    for _ in 0..samples {
        let p = trials.sphere_point();
        let mut v = 1.0;
        for (k, e) in exps.iter().enumerate() {
            for _ in 0..*e {
                v *= p[k];
            }
        }
        acc += v;
    }
    acc / samples as f64
}

/// Compares residue evaluation against quadrature for `n` random rational
/// functions and assignments; returns the worst relative error.
pub fn residue_vs_quadrature(n: usize, seed: u64) -> Result<f64> {
    let mut trials = Trials::new(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let f = trials.xi_rational();
        let exact = f.integrate_line()?;
        let xi = [0.25, -0.5, 0.125, 0.75];
        let h1v = 0.5 + trials.f64_unit();
        let anv = -0.25 + trials.f64_unit();
        let assign = move |p: ParamSymbol| match p {
            ParamSymbol::H1 => Some(h1v),
            ParamSymbol::An => Some(anv),
            _ => None,
        };
        let (ex_re, ex_im) = exact.eval_f64(
            &xi,
            xi.iter().map(|v| v * v).sum::<f64>(),
            &(|p: ParamSymbol| assign(p)),
        )?;
        let (q_re, q_im) = quadrature_line(&f, &xi, &assign)?;
        let scale = fabs(ex_re) + fabs(ex_im) + 1e-3;
        let err = (fabs(ex_re - q_re) + fabs(ex_im - q_im)) / scale;
        if err > worst {
            worst = err;
        }
    }
    Ok(worst)
}

fn bigrational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Monte-Carlo check of the moment table; returns the worst absolute error
/// against the closed form for all even monomials of degree <= 4.
pub fn moment_monte_carlo_worst(samples: usize, seed: u64) -> f64 {
    let mut worst: f64 = 0.0;
    let mut idx = 0u64;
    for e1 in [0u32, 2, 4] {
        for e2 in [0u32, 2] {
            for e3 in [0u32, 2] {
                if e1 + e2 + e3 > 4 {
                    continue;
                }
                let exps = [e1, e2, e3, 0];
                let exact = bigrational_to_f64(&moment_oracle(exps)) / 2.0; // per unit volume
                let mc = monte_carlo_moment(exps, samples, seed ^ idx);
                idx += 1;
                let err = fabs(exact - mc);
                if err > worst {
                    worst = err;
                }
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_relations() {
        assert!(GammaRep::new().relations_hold());
    }

    #[test]
    fn oracle_trace_examples() {
        let rep = GammaRep::new();
        let xi: [GRat; 4] = core::array::from_fn(|_| GRat::zero());
        let assign = |_p: ParamSymbol| Some(GRat::zero());
        // tr[1] = 4
        let one = CliffordElement::one();
        assert_eq!(rep.oracle_trace(&one, &xi, &assign).unwrap(), grat(4, 1));
        // tr[c1 c2] = 0
        let e = &CliffordElement::generator(1) * &CliffordElement::generator(2);
        assert!(rep.oracle_trace(&e, &xi, &assign).unwrap().is_zero());
        // tr[c(xi')^2] at a unit vector = -4
        let e = &CliffordElement::c_xi_prime() * &CliffordElement::c_xi_prime();
        let xi_unit: [GRat; 4] = [grat(1, 1), GRat::zero(), GRat::zero(), GRat::zero()];
        assert_eq!(
            rep.oracle_trace(&e, &xi_unit, &assign).unwrap(),
            grat(-4, 1)
        );
    }

    #[test]
    fn trace_agreement_small() {
        assert_eq!(trace_agreement_failures(50, 12345), 0);
    }

    #[test]
    fn cyclicity_small() {
        assert_eq!(cyclicity_failures(30, 999), 0);
    }

    #[test]
    fn quadrature_pi() {
        // int 1/(1+x^2) = pi
        let f = crate::xin::over_one_plus_xin2(alloc::vec![Scalar::one()], 1);
        let xi = [0.0; 4];
        let assign = |_p: ParamSymbol| Some(0.0);
        let (re, im) = quadrature_line(&f, &xi, &assign).unwrap();
        assert!(fabs(re - core::f64::consts::PI) < 1e-8, "re={re}");
        assert!(fabs(im) < 1e-8);
        // int 1/(1+x^2)^2 = pi/2
        let f = crate::xin::over_one_plus_xin2(alloc::vec![Scalar::one()], 2);
        let (re, _) = quadrature_line(&f, &xi, &assign).unwrap();
        assert!(fabs(re - core::f64::consts::PI / 2.0) < 1e-8);
    }

    #[test]
    fn residue_matches_quadrature() {
        let worst = residue_vs_quadrature(5, 42).unwrap();
        assert!(worst < 1e-6, "worst relative error {worst}");
    }

    #[test]
    fn moment_mc() {
        let worst = moment_monte_carlo_worst(20000, 7);
        assert!(worst < 1e-2, "worst {worst}");
    }
}

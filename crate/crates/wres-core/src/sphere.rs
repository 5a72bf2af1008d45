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

//! Integration of xi'-monomials over the unit 3-sphere and canonicalization
//! and contraction of curvature / one-form index symbols into the boundary
//! monomial basis.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::{GRat, Monomial, ParamSymbol, Scalar};
use crate::{EngineError, Result};

/// Closed-form even moment over S^3:
///   int xi^(2a) dsigma = Vol(S^3) prod (2a_i - 1)!! / prod_{m=1}^{sum a}(2 + 2m),
/// with Vol(S^3) = 2 pi^2. Odd monomials integrate to zero. The rational part
/// is returned; every surviving term gains a pi^2 grade at the caller.
pub fn moment_rational(exps: [u32; 4]) -> BigRational {
    if exps.iter().any(|e| e % 2 == 1) {
        return BigRational::zero();
    }
    let mut num = BigInt::from(2);
    for e in exps {
        let mut k = e as i64;
        while k > 1 {
            num *= BigInt::from(k - 1);
            k -= 2;
        }
    }
    let total: u32 = exps.iter().map(|e| e / 2).sum();
    let mut den = BigInt::one();
    for m in 1..=total {
        den *= BigInt::from(2 + 2 * m as i64);
    }
    BigRational::new(num, den)
}

/// Integrates every xi'-monomial of `s` over the cosphere. The input must be
/// restricted (no |xi'|^2 symbols); surviving terms gain pi-grade +2.
pub fn sphere_integrate(s: &Scalar) -> Scalar {
    let mut out = Scalar::zero();
    for (m, c) in s.terms() {
        debug_assert_eq!(m.sp, 0, "sphere_integrate on unrestricted scalar");
        let w = moment_rational(m.xi);
        if w.is_zero() {
            continue;
        }
        let mut m2 = m.clone();
        m2.xi = [0; 4];
        m2.pi += 2;
        out.add_term(m2, c.clone() * GRat::new(w, BigRational::zero()));
    }
    out
}

/// Canonical form of a Riemann component under the antisymmetries and the
/// pair-exchange symmetry; `None` means the component vanishes identically.
pub fn riemann_canonical(mut i: u8, mut j: u8, mut k: u8, mut l: u8) -> Option<(i8, ParamSymbol)> {
    if i == j || k == l {
        return None;
    }
    let mut sign = 1i8;
    if i > j {
        core::mem::swap(&mut i, &mut j);
        sign = -sign;
    }
    if k > l {
        core::mem::swap(&mut k, &mut l);
        sign = -sign;
    }
    if (i, j) > (k, l) {
        core::mem::swap(&mut i, &mut k);
        core::mem::swap(&mut j, &mut l);
    }
    Some((sign, ParamSymbol::Riem(i, j, k, l)))
}

/// Rewrites every Riemann symbol of a scalar into canonical index order,
/// applying antisymmetry in each pair, pair exchange, and (for four distinct
/// indices) the first Bianchi identity R_{adbc} = R_{acbd} - R_{abcd} for
/// a < b < c < d.
pub fn canonicalize_riemann(s: &Scalar) -> Scalar {
    let mut out = Scalar::zero();
    'terms: for (m, c) in s.terms() {
        let mut base = Monomial {
            params: BTreeMap::new(),
            xi: m.xi,
            sp: m.sp,
            pi: m.pi,
        };
        let mut factors: Vec<(ParamSymbol, i8)> = Vec::new();
        for (p, e) in &m.params {
            match p {
                ParamSymbol::Riem(i, j, k, l) => {
                    for _ in 0..*e {
                        match riemann_canonical(*i, *j, *k, *l) {
                            None => continue 'terms,
                            Some((sg, canon)) => factors.push((canon, sg)),
                        }
                    }
                }
                _ => {
                    base.params.insert(*p, *e);
                }
            }
        }
        // expand Bianchi rewrites (each factor maps to one or two canonical
        // symbols); canonical form keeps the second slot minimal among the
        // last three indices
        let mut expansion: Vec<(Vec<ParamSymbol>, GRat)> =
            alloc::vec![(Vec::new(), c.clone())];
        for (p, sg) in factors {
            let pieces = bianchi_pieces(p, sg);
            let mut next = Vec::new();
            for (syms, coeff) in &expansion {
                for (piece_sym, piece_coeff) in &pieces {
                    let mut syms2 = syms.clone();
                    syms2.push(*piece_sym);
                    next.push((syms2, coeff.clone() * piece_coeff.clone()));
                }
            }
            expansion = next;
        }
        for (syms, coeff) in expansion {
            let mut m2 = base.clone();
            for p in syms {
                *m2.params.entry(p).or_insert(0) += 1;
            }
            out.add_term(m2, coeff);
        }
    }
    out
}

/// For R_{a d b c} with a < b < c < d (detected as canonical-pair form
/// (a,d,b,c)), rewrite via first Bianchi into the basis {R_{abcd}, R_{acbd}}.
fn bianchi_pieces(p: ParamSymbol, sign: i8) -> Vec<(ParamSymbol, GRat)> {
    use crate::coeff::grat;
    let s = if sign < 0 { grat(-1, 1) } else { grat(1, 1) };
    if let ParamSymbol::Riem(i, j, k, l) = p {
        let mut idx = [i, j, k, l];
        idx.sort_unstable();
        let distinct = idx[0] < idx[1] && idx[1] < idx[2] && idx[2] < idx[3];
        if distinct {
            let (a, b, c, d) = (idx[0], idx[1], idx[2], idx[3]);
            // canonical pairs with first index a: (a,b|c,d), (a,c|b,d), (a,d|b,c)
            if (i, j, k, l) == (a, d, b, c) {
                return alloc::vec![
                    (ParamSymbol::Riem(a, c, b, d), s.clone()),
                    (ParamSymbol::Riem(a, b, c, d), -s),
                ];
            }
        }
    }
    alloc::vec![(p, s)]
}

/// Boundary monomial basis for case results.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum BoundaryMonomial {
    H1Sq,
    H2,
    Sb,
    AnH1,
    DAn,
    Xp2,
    Xp2H1,
    An2,
    DivX,
    X2,
}

impl BoundaryMonomial {
    pub fn tag(&self) -> &'static str {
        match self {
            BoundaryMonomial::H1Sq => "H1SQ",
            BoundaryMonomial::H2 => "H2",
            BoundaryMonomial::Sb => "SB",
            BoundaryMonomial::AnH1 => "AN_H1",
            BoundaryMonomial::DAn => "DAN",
            BoundaryMonomial::Xp2 => "XP2",
            BoundaryMonomial::Xp2H1 => "XP2_H1",
            BoundaryMonomial::An2 => "AN2",
            BoundaryMonomial::DivX => "DIVX",
            BoundaryMonomial::X2 => "X2",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        Some(match s {
            "H1SQ" => BoundaryMonomial::H1Sq,
            "H2" => BoundaryMonomial::H2,
            "SB" => BoundaryMonomial::Sb,
            "AN_H1" => BoundaryMonomial::AnH1,
            "DAN" => BoundaryMonomial::DAn,
            "XP2" => BoundaryMonomial::Xp2,
            "XP2_H1" => BoundaryMonomial::Xp2H1,
            "AN2" => BoundaryMonomial::An2,
            "DIVX" => BoundaryMonomial::DivX,
            "X2" => BoundaryMonomial::X2,
            _ => return None,
        })
    }

    pub fn all() -> [BoundaryMonomial; 10] {
        [
            BoundaryMonomial::H1Sq,
            BoundaryMonomial::H2,
            BoundaryMonomial::Sb,
            BoundaryMonomial::AnH1,
            BoundaryMonomial::DAn,
            BoundaryMonomial::Xp2,
            BoundaryMonomial::Xp2H1,
            BoundaryMonomial::An2,
            BoundaryMonomial::DivX,
            BoundaryMonomial::X2,
        ]
    }
}

/// Contracts a fully sphere-integrated scalar onto the boundary monomial
/// basis. Sums over repeated indices must close into rotation invariants
/// (|X'|^2, divX', Ricci traces feeding the scalar curvature); anything left
/// over is an unresolved free index and errors out.
pub fn contract(s: &Scalar) -> Result<BTreeMap<BoundaryMonomial, GRat>> {
    let canon = canonicalize_riemann(s);
    // First fold Riemann contractions into Ricci, then Ricci traces into Sb.
    let folded = fold_curvature(&canon)?;
    let mut out: BTreeMap<BoundaryMonomial, GRat> = BTreeMap::new();
    // Group remaining index families and check orbit uniformity.
    let mut x_sq: BTreeMap<u8, GRat> = BTreeMap::new();
    let mut x_sq_h1: BTreeMap<u8, GRat> = BTreeMap::new();
    let mut div_x: BTreeMap<u8, GRat> = BTreeMap::new();
    for (m, c) in folded.terms() {
        debug_assert_eq!(m.pi, 3, "case results are pi^3 graded");
        let ps: Vec<(ParamSymbol, u32)> = m.params.iter().map(|(p, e)| (*p, *e)).collect();
        let add = |out: &mut BTreeMap<BoundaryMonomial, GRat>, b: BoundaryMonomial, c: &GRat| {
            let e = out.entry(b).or_insert_with(GRat::zero);
            *e = e.clone() + c.clone();
        };
        match ps.as_slice() {
            [] => {
                if !c.is_zero() {
                    return Err(EngineError::UnresolvedIndex(m.clone()));
                }
            }
            [(ParamSymbol::H1, 2)] => add(&mut out, BoundaryMonomial::H1Sq, c),
            [(ParamSymbol::H2, 1)] => add(&mut out, BoundaryMonomial::H2, c),
            [(ParamSymbol::Sb, 1)] => add(&mut out, BoundaryMonomial::Sb, c),
            [(ParamSymbol::An, 1), (ParamSymbol::H1, 1)]
            | [(ParamSymbol::H1, 1), (ParamSymbol::An, 1)] => {
                add(&mut out, BoundaryMonomial::AnH1, c)
            }
            [(ParamSymbol::DAn, 1)] => add(&mut out, BoundaryMonomial::DAn, c),
            [(ParamSymbol::An, 2)] => add(&mut out, BoundaryMonomial::An2, c),
            [(ParamSymbol::NormXp2, 1)] => add(&mut out, BoundaryMonomial::Xp2, c),
            [(ParamSymbol::NormXp2, 1), (ParamSymbol::H1, 1)]
            | [(ParamSymbol::H1, 1), (ParamSymbol::NormXp2, 1)] => {
                add(&mut out, BoundaryMonomial::Xp2H1, c)
            }
            [(ParamSymbol::X(j), 2)] => {
                x_sq.insert(*j, c.clone());
            }
            [(ParamSymbol::X(j), 2), (ParamSymbol::H1, 1)]
            | [(ParamSymbol::H1, 1), (ParamSymbol::X(j), 2)] => {
                x_sq_h1.insert(*j, c.clone());
            }
            [(ParamSymbol::DX(k, j), 1)] if k == j && *k <= 4 => {
                div_x.insert(*k, c.clone());
            }
            _ => return Err(EngineError::UnresolvedIndex(m.clone())),
        }
    }
    close_orbit(&mut out, BoundaryMonomial::Xp2, x_sq)?;
    close_orbit(&mut out, BoundaryMonomial::Xp2H1, x_sq_h1)?;
    close_orbit(&mut out, BoundaryMonomial::DivX, div_x)?;
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Requires all four members of a summed index family to carry the same
/// coefficient and folds them into one boundary monomial.
fn close_orbit(
    out: &mut BTreeMap<BoundaryMonomial, GRat>,
    target: BoundaryMonomial,
    family: BTreeMap<u8, GRat>,
) -> Result<()> {
    if family.is_empty() {
        return Ok(());
    }
    if family.len() != 4 {
        let mut m = Monomial::one();
        m.pi = 3;
        return Err(EngineError::UnresolvedIndex(m));
    }
    let mut vals = family.values();
    let first = vals.next().unwrap().clone();
    if !vals.all(|v| *v == first) {
        let mut m = Monomial::one();
        m.pi = 3;
        return Err(EngineError::UnresolvedIndex(m));
    }
    let e = out.entry(target).or_insert_with(GRat::zero);
    *e = e.clone() + first;
    Ok(())
}

/// Folds Sum_a Riem(i,a,j,a) into Ricci(i,j) and Sum_i Ricci(i,i) into Sb.
/// The Ricci sign convention Ric_ij = Sum_a R_{iaja} makes the full double
/// trace equal +s_bd.
fn fold_curvature(s: &Scalar) -> Result<Scalar> {
    // Work at the level of single-Riemann-factor monomials (all that survive
    // sphere integration in this computation).
    let mut riem_diag: BTreeMap<(u8, u8), GRat> = BTreeMap::new(); // (t,l): R_{tltl}, t<l
    let mut ricci_diag: BTreeMap<u8, GRat> = BTreeMap::new();
    let mut rest = Scalar::zero();
    for (m, c) in s.terms() {
        let riems: Vec<ParamSymbol> = m
            .params
            .keys()
            .filter(|p| matches!(p, ParamSymbol::Riem(..) | ParamSymbol::Ricci(..)))
            .copied()
            .collect();
        if riems.len() != 1 || m.params.len() != 1 {
            if riems.is_empty() {
                rest.add_term(m.clone(), c.clone());
                continue;
            }
            return Err(EngineError::UnresolvedIndex(m.clone()));
        }
        match riems[0] {
            ParamSymbol::Riem(i, j, k, l) if i == k && j == l => {
                let e = riem_diag.entry((i, j)).or_insert_with(GRat::zero);
                *e = e.clone() + c.clone();
            }
            ParamSymbol::Ricci(i, j) if i == j => {
                let e = ricci_diag.entry(i).or_insert_with(GRat::zero);
                *e = e.clone() + c.clone();
            }
            _ => return Err(EngineError::UnresolvedIndex(m.clone())),
        }
    }
    // Ricci trace: all four diagonal entries with equal coefficient -> Sb
    if !ricci_diag.is_empty() {
        if ricci_diag.len() != 4 {
            let mut m = Monomial::one();
            m.pi = 3;
            return Err(EngineError::UnresolvedIndex(m));
        }
        let mut vals = ricci_diag.values();
        let first = vals.next().unwrap().clone();
        if !vals.all(|v| *v == first) {
            let mut m = Monomial::one();
            m.pi = 3;
            return Err(EngineError::UnresolvedIndex(m));
        }
        let mut mono = Monomial::param(ParamSymbol::Sb);
        mono.pi = 3;
        rest.add_term(mono, first);
    }
    // Full Riemann double trace: the six canonical pairs t<l, each counted
    // once, assemble s_bd = sum over all ordered pairs = 2 * sum_{t<l}.
    if !riem_diag.is_empty() {
        if riem_diag.len() != 6 {
            let mut m = Monomial::one();
            m.pi = 3;
            return Err(EngineError::UnresolvedIndex(m));
        }
        let mut vals = riem_diag.values();
        let first = vals.next().unwrap().clone();
        if !vals.all(|v| *v == first) {
            let mut m = Monomial::one();
            m.pi = 3;
            return Err(EngineError::UnresolvedIndex(m));
        }
        let mut mono = Monomial::param(ParamSymbol::Sb);
        mono.pi = 3;
        // coefficient times sum_{t<l} R_{tltl} = coefficient * s_bd / 2
        rest.add_term(mono, first * crate::coeff::grat(1, 2));
    }
    Ok(rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{grat, rat};

    #[test]
    fn moments_match_printed_values() {
        assert_eq!(moment_rational([0, 0, 0, 0]), rat(2, 1)); // Omega_3 = 2 pi^2
        assert_eq!(moment_rational([2, 0, 0, 0]), rat(1, 2)); // pi^2/2
        assert_eq!(moment_rational([2, 2, 0, 0]), rat(1, 12));
        assert_eq!(moment_rational([4, 0, 0, 0]), rat(1, 4));
        assert_eq!(moment_rational([1, 1, 0, 0]), rat(0, 1));
        assert_eq!(moment_rational([3, 0, 0, 0]), rat(0, 1));
        assert_eq!(moment_rational([2, 2, 2, 0]), rat(1, 96));
        assert_eq!(moment_rational([4, 2, 0, 0]), rat(1, 32));
        assert_eq!(moment_rational([6, 0, 0, 0]), rat(5, 32));
    }

    #[test]
    fn trace_identity_of_moments() {
        // sum_mu moment(xi_mu^2 * m) = moment(m) for even m
        for m in [[0u32, 0, 0, 0], [2, 0, 0, 0], [2, 2, 0, 0], [4, 0, 0, 0]] {
            let mut acc = BigRational::zero();
            for mu in 0..4 {
                let mut e = m;
                e[mu] += 2;
                acc += moment_rational(e);
            }
            assert_eq!(acc, moment_rational(m));
        }
    }

    #[test]
    fn sphere_integrate_grades() {
        let s = crate::coeff::xi_norm_sq();
        let v = sphere_integrate(&s);
        // sum of four xi_j^2 moments = 4 * 1/2 = 2 -> 2 pi^2
        assert_eq!(v, Scalar::from_int(2).mul_pi(2));
        let one = Scalar::one();
        assert_eq!(sphere_integrate(&one), Scalar::from_int(2).mul_pi(2));
    }

    #[test]
    fn riemann_zero_and_double_flip() {
        assert!(riemann_canonical(1, 1, 2, 3).is_none());
        // R_{j i l k} = R_{i j k l}: double flip
        let (s1, p1) = riemann_canonical(2, 1, 4, 3).unwrap();
        let (s2, p2) = riemann_canonical(1, 2, 3, 4).unwrap();
        assert_eq!(p1, p2);
        assert_eq!(s1, s2);
        // single flip changes sign
        let (s3, _) = riemann_canonical(2, 1, 3, 4).unwrap();
        assert_eq!(s3, -s2);
    }

    #[test]
    fn canonicalize_idempotent() {
        let mut s = Scalar::zero();
        let mut m = Monomial::param(ParamSymbol::Riem(3, 1, 4, 2));
        m.pi = 0;
        s.add_term(m, grat(5, 7));
        let c1 = canonicalize_riemann(&s);
        let c2 = canonicalize_riemann(&c1);
        assert_eq!(c1, c2);
    }

    #[test]
    fn bianchi_relation() {
        // R_{1423} + R_{1234} - R_{1324} = 0 after canonicalization
        let mk = |i, j, k, l| {
            let mut s = Scalar::zero();
            s.add_term(Monomial::param(ParamSymbol::Riem(i, j, k, l)), grat(1, 1));
            s
        };
        let lhs = &(&mk(1, 4, 2, 3) + &mk(1, 2, 3, 4)) - &mk(1, 3, 2, 4);
        assert!(canonicalize_riemann(&lhs).is_zero());
    }

    #[test]
    fn contract_scalar_curvature() {
        // sum over all ordered pairs (t,l) of R_{tltl} -> Sb
        let mut s = Scalar::zero();
        for t in 1..=4u8 {
            for l in 1..=4u8 {
                if t == l {
                    continue;
                }
                let mut m = Monomial::param(ParamSymbol::Riem(t, l, t, l));
                m.pi = 3;
                s.add_term(m, grat(1, 1));
            }
        }
        let out = contract(&s).unwrap();
        assert_eq!(out.get(&BoundaryMonomial::Sb), Some(&grat(1, 1)));
    }

    #[test]
    fn contract_xp2_and_div() {
        let mut s = Scalar::zero();
        for j in 1..=4u8 {
            let mut m = Monomial::one();
            m.params.insert(ParamSymbol::X(j), 2);
            m.pi = 3;
            s.add_term(m, grat(3, 2));
            let mut m = Monomial::param(ParamSymbol::dx(j, j));
            m.pi = 3;
            s.add_term(m, grat(-1, 4));
        }
        let out = contract(&s).unwrap();
        assert_eq!(out.get(&BoundaryMonomial::Xp2), Some(&grat(3, 2)));
        assert_eq!(out.get(&BoundaryMonomial::DivX), Some(&grat(-1, 4)));
    }

    #[test]
    fn contract_rejects_free_index() {
        let mut s = Scalar::zero();
        let mut m = Monomial::one();
        m.params.insert(ParamSymbol::X(2), 2);
        m.pi = 3;
        s.add_term(m, grat(1, 1)); // only one member of the orbit
        assert!(contract(&s).is_err());
    }
}

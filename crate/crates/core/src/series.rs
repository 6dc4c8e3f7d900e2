//! Truncated formal power series with exact rational coefficients.
//!
//! [`Series1`] is a series in `z` known up to degree `order`;
//! [`Series2`] is a series in commuting `z`, `w` known up to total degree
//! `order`. Ring operations truncate to the smaller order of their
//! operands. Division by a monomial is only performed after checking that
//! every low-degree coefficient vanishes, and it lowers the order by the
//! degree of the monomial.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Outcome of comparing two series on their common prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agreement<I> {
    /// Highest degree that was compared.
    pub order: usize,
    /// First index (in graded order) where the coefficients differ.
    pub first_mismatch: Option<I>,
}

impl<I> Agreement<I> {
    pub fn holds(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Power series in one variable, truncated at degree `order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Series1 {
    coeffs: Vec<Rational>,
}

impl Series1 {
    pub fn zero(order: usize) -> Self {
        Series1 {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Rational::one())
    }

    pub fn constant(order: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `z`.
    pub fn var(order: usize) -> Self {
        Self::monomial(order, 1, Rational::one())
    }

    pub fn monomial(order: usize, degree: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    /// Build from coefficients `c_0, c_1, ...`; missing ones are zero and
    /// extra ones beyond `order` are dropped.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut s = Self::zero(order);
        for (d, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[d] = c;
        }
        s
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize) -> Rational) -> Self {
        Series1 {
            coeffs: (0..=order).map(&mut f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `z^d`, or `None` beyond the truncation order.
    pub fn coeff(&self, d: usize) -> Option<&Rational> {
        self.coeffs.get(d)
    }

    pub fn set_coeff(&mut self, d: usize, c: Rational) {
        if let Some(slot) = self.coeffs.get_mut(d) {
            *slot = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest degree with a nonzero coefficient, `order + 1` for zero.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Series1::from_coeffs(order, self.coeffs.iter().take(order + 1).cloned())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Series1 {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Series1::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by `z^k`. The product is known `k` degrees further.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut out = Series1::zero(self.order() + k);
        for (d, c) in self.coeffs.iter().enumerate() {
            out.coeffs[d + k] = c.clone();
        }
        out
    }

    /// Divide by `z^k` after checking the first `k` coefficients vanish.
    pub fn div_by_z(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::TruncationExceeded {
                needed: k,
                available: self.order(),
            });
        }
        if let Some(d) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(Error::NotDivisible {
                z_power: k,
                w_power: 0,
                n: d,
                m: 0,
            });
        }
        Ok(Series1 {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// `outer(inner(z))`, truncated at the smaller order.
    pub fn compose(outer: &Series1, inner: &Series1) -> Result<Series1> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = outer.order().min(inner.order());
        let inner = inner.truncate(order);
        // Horner from the top coefficient down.
        let mut acc = Series1::constant(order, outer.coeffs[order].clone());
        for d in (0..order).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += &outer.coeffs[d];
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `f(g(z)) = g(f(z)) = z`.
    ///
    /// Coefficients are solved one degree at a time: once `g` is correct
    /// below degree `k`, the degree-`k` coefficient of `f(g(z))` is off by
    /// exactly `f_1 * delta_k`.
    pub fn comp_inverse(&self) -> Result<Series1> {
        let order = self.order();
        if !self.coeffs[0].is_zero() || order == 0 || self.coeffs[1].is_zero() {
            return Err(Error::NotInvertible);
        }
        let lead_inv = self.coeffs[1].recip();
        let mut g = Series1::zero(order);
        g.coeffs[1] = lead_inv.clone();
        for k in 2..=order {
            let probe = Series1::compose(self, &g.truncate(k))?;
            let excess = &probe.coeffs[k];
            g.coeffs[k] = -(excess * &lead_inv);
        }
        Ok(g)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Series1> {
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let order = self.order();
        let c0_inv = self.coeffs[0].recip();
        let mut out = Series1::zero(order);
        out.coeffs[0] = c0_inv.clone();
        for d in 1..=order {
            let mut acc = Rational::zero();
            for i in 1..=d {
                acc += &self.coeffs[i] * &out.coeffs[d - i];
            }
            out.coeffs[d] = -(acc * &c0_inv);
        }
        Ok(out)
    }

    /// Compare on `0..=min(order)`.
    pub fn agrees_with(&self, other: &Series1) -> Agreement<usize> {
        let order = self.order().min(other.order());
        let first_mismatch = (0..=order).find(|&d| self.coeffs[d] != other.coeffs[d]);
        Agreement {
            order,
            first_mismatch,
        }
    }
}

fn zip_with(a: &Series1, b: &Series1, f: impl Fn(&Rational, &Rational) -> Rational) -> Series1 {
    let order = a.order().min(b.order());
    Series1 {
        coeffs: (0..=order).map(|d| f(&a.coeffs[d], &b.coeffs[d])).collect(),
    }
}

impl Add for &Series1 {
    type Output = Series1;
    fn add(self, rhs: &Series1) -> Series1 {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &Series1 {
    type Output = Series1;
    fn sub(self, rhs: &Series1) -> Series1 {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Neg for &Series1 {
    type Output = Series1;
    fn neg(self) -> Series1 {
        Series1 {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Series1 {
    type Output = Series1;
    fn mul(self, rhs: &Series1) -> Series1 {
        let order = self.order().min(rhs.order());
        let mut out = Series1::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

/// Power series in commuting `z`, `w`, truncated at total degree `order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Series2 {
    order: usize,
    // rows[i][j] is the coefficient of z^i w^j, with i + j <= order.
    rows: Vec<Vec<Rational>>,
}

impl Series2 {
    pub fn zero(order: usize) -> Self {
        Series2 {
            order,
            rows: (0..=order)
                .map(|i| vec![Rational::zero(); order - i + 1])
                .collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, 0, Rational::one())
    }

    pub fn monomial(order: usize, n: usize, m: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        s.set_coeff(n, m, c);
        s
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        Series2 {
            order,
            rows: (0..=order)
                .map(|i| (0..=order - i).map(|j| f(i, j)).collect())
                .collect(),
        }
    }

    /// Embed a series in `z` alone.
    pub fn from_z(s: &Series1) -> Self {
        let order = s.order();
        Self::from_fn(order, |i, j| {
            if j == 0 {
                s.coeffs[i].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Embed a series in `w` alone.
    pub fn from_w(s: &Series1) -> Self {
        let order = s.order();
        Self::from_fn(order, |i, j| {
            if i == 0 {
                s.coeffs[j].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// `a(z) * b(w)` truncated at the smaller order.
    pub fn outer_product(a: &Series1, b: &Series1) -> Self {
        let order = a.order().min(b.order());
        Self::from_fn(order, |i, j| &a.coeffs[i] * &b.coeffs[j])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize, m: usize) -> Option<&Rational> {
        self.rows.get(n).and_then(|row| row.get(m))
    }

    pub fn set_coeff(&mut self, n: usize, m: usize, c: Rational) {
        if let Some(slot) = self.rows.get_mut(n).and_then(|row| row.get_mut(m)) {
            *slot = c;
        }
    }

    /// All `(n, m, coefficient)` in graded-lexicographic order: total
    /// degree ascending, then `z`-degree descending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        (0..=self.order)
            .flat_map(move |d| (0..=d).rev().map(move |n| (n, d - n, &self.rows[n][d - n])))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self::from_fn(order, |i, j| self.rows[i][j].clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_fn(self.order, |i, j| &self.rows[i][j] * c)
    }

    /// Coefficients with `m = 0`.
    pub fn restrict_z(&self) -> Series1 {
        Series1::from_fn(self.order, |i| self.rows[i][0].clone())
    }

    /// Coefficients with `n = 0`.
    pub fn restrict_w(&self) -> Series1 {
        Series1::from_fn(self.order, |j| self.rows[0][j].clone())
    }

    /// Multiply by `z^zk w^wk`; the product is known `zk + wk` degrees
    /// further.
    pub fn shift_up(&self, zk: usize, wk: usize) -> Self {
        let mut out = Series2::zero(self.order + zk + wk);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                out.rows[i + zk][j + wk] = c.clone();
            }
        }
        out
    }

    /// Divide by `z^zk w^wk`, failing on any coefficient that would need a
    /// negative exponent. The result is known to `order - zk - wk`.
    pub fn div_by(&self, zk: usize, wk: usize) -> Result<Self> {
        if zk + wk > self.order {
            return Err(Error::TruncationExceeded {
                needed: zk + wk,
                available: self.order,
            });
        }
        for (n, m, c) in self.terms() {
            if (n < zk || m < wk) && !c.is_zero() {
                return Err(Error::NotDivisible {
                    z_power: zk,
                    w_power: wk,
                    n,
                    m,
                });
            }
        }
        let order = self.order - zk - wk;
        Ok(Self::from_fn(order, |i, j| {
            self.rows[i + zk][j + wk].clone()
        }))
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let c00 = &self.rows[0][0];
        if c00.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv = c00.recip();
        let mut out = Series2::zero(self.order);
        out.rows[0][0] = inv.clone();
        for d in 1..=self.order {
            for n in (0..=d).rev() {
                let m = d - n;
                let mut acc = Rational::zero();
                for p in 0..=n {
                    for q in 0..=m {
                        if p + q == 0 {
                            continue;
                        }
                        let f = &self.rows[p][q];
                        if !f.is_zero() {
                            acc += f * &out.rows[n - p][m - q];
                        }
                    }
                }
                out.rows[n][m] = -(acc * &inv);
            }
        }
        Ok(out)
    }

    /// Simultaneous substitution `z <- sub_z(z)`, `w <- sub_w(w)`.
    pub fn compose_each_variable(&self, sub_z: &Series1, sub_w: &Series1) -> Result<Self> {
        if !sub_z.coeffs[0].is_zero() || !sub_w.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order.min(sub_z.order()).min(sub_w.order());
        let zp = powers(&sub_z.truncate(order), order);
        let wp = powers(&sub_w.truncate(order), order);
        let mut out = Series2::zero(order);
        for i in 0..=order {
            for j in 0..=order - i {
                let c = &self.rows[i][j];
                if c.is_zero() {
                    continue;
                }
                // sub_z^i has valuation >= i, sub_w^j has valuation >= j.
                for (p, zc) in zp[i].coeffs.iter().enumerate().skip(i) {
                    if zc.is_zero() {
                        continue;
                    }
                    let zc = c * zc;
                    for (q, wc) in wp[j].coeffs.iter().enumerate().take(order - p + 1).skip(j) {
                        if !wc.is_zero() {
                            out.rows[p][q] += &zc * wc;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Compare on total degrees `0..=min(order)`.
    pub fn agrees_with(&self, other: &Series2) -> Agreement<(usize, usize)> {
        let order = self.order.min(other.order);
        let first_mismatch = (0..=order)
            .flat_map(|d| (0..=d).rev().map(move |n| (n, d - n)))
            .find(|&(n, m)| self.rows[n][m] != other.rows[n][m]);
        Agreement {
            order,
            first_mismatch,
        }
    }
}

fn powers(s: &Series1, up_to: usize) -> Vec<Series1> {
    let mut out = Vec::with_capacity(up_to + 1);
    out.push(Series1::one(s.order()));
    for k in 1..=up_to {
        let next = &out[k - 1] * s;
        out.push(next);
    }
    out
}

fn zip_with2(a: &Series2, b: &Series2, f: impl Fn(&Rational, &Rational) -> Rational) -> Series2 {
    let order = a.order.min(b.order);
    Series2::from_fn(order, |i, j| f(&a.rows[i][j], &b.rows[i][j]))
}

impl Add for &Series2 {
    type Output = Series2;
    fn add(self, rhs: &Series2) -> Series2 {
        zip_with2(self, rhs, |x, y| x + y)
    }
}

impl Sub for &Series2 {
    type Output = Series2;
    fn sub(self, rhs: &Series2) -> Series2 {
        zip_with2(self, rhs, |x, y| x - y)
    }
}

impl Neg for &Series2 {
    type Output = Series2;
    fn neg(self) -> Series2 {
        Series2::from_fn(self.order, |i, j| -&self.rows[i][j])
    }
}

impl Mul for &Series2 {
    type Output = Series2;
    fn mul(self, rhs: &Series2) -> Series2 {
        let order = self.order.min(rhs.order);
        let mut out = Series2::zero(order);
        for i in 0..=order {
            for j in 0..=order - i {
                let a = &self.rows[i][j];
                if a.is_zero() {
                    continue;
                }
                for p in 0..=order - i - j {
                    for q in 0..=order - i - j - p {
                        let b = &rhs.rows[p][q];
                        if !b.is_zero() {
                            out.rows[i + p][j + q] += a * b;
                        }
                    }
                }
            }
        }
        out
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: &mut bool,
    c: &Rational,
    vars: &[(&str, usize)],
) -> fmt::Result {
    if c.is_zero() {
        return Ok(());
    }
    let negative = c.is_negative();
    let magnitude = c.abs();
    if *first {
        if negative {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if negative { " - " } else { " + " })?;
    }
    *first = false;
    let mut monomial = String::new();
    for &(name, exp) in vars {
        if exp == 0 {
            continue;
        }
        if !monomial.is_empty() {
            monomial.push('*');
        }
        monomial.push_str(name);
        if exp > 1 {
            monomial.push('^');
            monomial.push_str(&alloc::format!("{exp}"));
        }
    }
    if monomial.is_empty() {
        write!(f, "{magnitude}")
    } else if magnitude.is_one() {
        f.write_str(&monomial)
    } else {
        write!(f, "{magnitude}*{monomial}")
    }
}

impl fmt::Display for Series1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            write_term(f, &mut first, c, &[("z", d)])?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Display for Series2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, m, c) in self.terms() {
            write_term(f, &mut first, c, &[("z", n), ("w", m)])?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn s1(order: usize, c: &[i64]) -> Series1 {
        Series1::from_coeffs(order, c.iter().map(|&x| int(x)))
    }

    #[test]
    fn arithmetic_examples() {
        let a = s1(2, &[1, 1]);
        assert_eq!(&a * &a, s1(2, &[1, 2, 1]));
        let zero = Series1::zero(4);
        assert!((&s1(4, &[3, 1, 4]) * &zero).is_zero());
        let p = s1(4, &[0, 1, 1]);
        let q = s1(4, &[0, 1, -1]);
        assert_eq!(&p * &q, s1(4, &[0, 0, 1, 0, -1]));
        // Mixed orders truncate to the smaller one.
        assert_eq!((&s1(2, &[1, 1]) * &s1(5, &[1, 1])).order(), 2);
    }

    #[test]
    fn compose_examples() {
        let g = s1(5, &[0, 2, -1, 3]);
        assert_eq!(Series1::compose(&Series1::var(5), &g).unwrap(), g);
        let outer = s1(4, &[1, 1, 1]);
        let inner = s1(4, &[0, 0, 1]);
        assert_eq!(
            Series1::compose(&outer, &inner).unwrap(),
            s1(4, &[1, 0, 1, 0, 1])
        );
        let psi = s1(3, &[0, 1, 1]);
        let inv = s1(3, &[0, 1, -1, 2]);
        assert_eq!(Series1::compose(&psi, &inv).unwrap(), Series1::var(3));
        assert_eq!(
            Series1::compose(&psi, &s1(3, &[1, 1])),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Series1::var(4).comp_inverse().unwrap(), Series1::var(4));
        let two_z = s1(4, &[0, 2]);
        assert_eq!(
            two_z.comp_inverse().unwrap(),
            Series1::monomial(4, 1, ratio(1, 2))
        );
        let f = s1(5, &[0, 1, 1]);
        assert_eq!(f.comp_inverse().unwrap(), s1(5, &[0, 1, -1, 2, -5, 14]));
        assert_eq!(s1(3, &[1, 1]).comp_inverse(), Err(Error::NotInvertible));
        assert_eq!(s1(3, &[0, 0, 1]).comp_inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(Series1::one(3).reciprocal().unwrap(), Series1::one(3));
        assert_eq!(s1(3, &[1, -1]).reciprocal().unwrap(), s1(3, &[1, 1, 1, 1]));
        assert_eq!(s1(2, &[1, 2, 1]).reciprocal().unwrap(), s1(2, &[1, -2, 3]));
        assert_eq!(s1(2, &[0, 1]).reciprocal(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn bivariate_substitution_examples() {
        let zw = Series2::monomial(3, 1, 1, int(1));
        assert_eq!(
            zw.compose_each_variable(&Series1::var(3), &Series1::var(3))
                .unwrap(),
            zw
        );
        let sub_w = s1(3, &[0, 1, -1]);
        let got = zw.compose_each_variable(&Series1::var(3), &sub_w).unwrap();
        let want = &zw - &Series2::monomial(3, 1, 2, int(1));
        assert_eq!(got, want);
        let f = &Series2::monomial(3, 2, 0, int(1)) + &Series2::monomial(3, 0, 2, int(1));
        let got = f
            .compose_each_variable(&s1(3, &[0, 2]), &Series1::zero(3))
            .unwrap();
        assert_eq!(got, Series2::monomial(3, 2, 0, int(4)));
        assert_eq!(
            f.compose_each_variable(&s1(3, &[1]), &Series1::var(3)),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn monomial_division_is_checked() {
        let s = &Series2::monomial(4, 1, 1, int(2)) + &Series2::monomial(4, 2, 1, int(3));
        let q = s.div_by(1, 1).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.coeff(0, 0), Some(&int(2)));
        assert_eq!(q.coeff(1, 0), Some(&int(3)));
        assert!(matches!(
            s.div_by(0, 2),
            Err(Error::NotDivisible { n: 1, m: 1, .. })
        ));
        assert_eq!(q.shift_up(1, 1), s);
    }

    #[test]
    fn canonical_rendering() {
        let s = Series2::from_fn(2, |n, m| match (n, m) {
            (0, 0) => int(1),
            (1, 0) => ratio(3, 2),
            (0, 1) => int(-1),
            (1, 1) => int(2),
            (0, 2) => int(1),
            _ => int(0),
        });
        assert_eq!(s.to_string(), "1 + 3/2*z - w + 2*z*w + w^2");
        assert_eq!(Series2::zero(3).to_string(), "0");
        assert_eq!(s1(3, &[0, -1, 0, 5]).to_string(), "-z + 5*z^3");
    }

    #[test]
    fn bivariate_reciprocal() {
        let s = Series2::from_fn(4, |n, m| int((n as i64 + 1) * (2 * m as i64 - 1)).abs());
        let r = s.reciprocal().unwrap();
        assert_eq!(&s * &r, Series2::one(4));
    }

    // Lagrange inversion: [z^n] g = (1/n) [z^{n-1}] (z / f(z))^n.
    fn lagrange_inverse(f: &Series1) -> Series1 {
        let order = f.order();
        let f_over_z = Series1::from_coeffs(order, f.coeffs()[1..].iter().cloned());
        let h = f_over_z.reciprocal().unwrap();
        let mut g = Series1::zero(order);
        for n in 1..=order {
            let hn = h.pow(n);
            g.set_coeff(n, hn.coeff(n - 1).unwrap() / int(n as i64));
        }
        g
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
    }

    fn series_strategy(order: usize) -> impl Strategy<Value = Series1> {
        proptest::collection::vec(small_rational(), order + 1)
            .prop_map(move |c| Series1::from_coeffs(order, c))
    }

    fn invertible_strategy(order: usize) -> impl Strategy<Value = Series1> {
        (
            series_strategy(order),
            small_rational().prop_filter("nonzero", |c| !c.is_zero()),
        )
            .prop_map(|(mut s, lead)| {
                s.set_coeff(0, Rational::zero());
                s.set_coeff(1, lead);
                s
            })
    }

    fn bivariate_strategy(order: usize) -> impl Strategy<Value = Series2> {
        let cells = (order + 1) * (order + 2) / 2;
        proptest::collection::vec(small_rational(), cells).prop_map(move |c| {
            let mut it = c.into_iter();
            Series2::from_fn(order, |_, _| it.next().unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn inverse_composes_both_ways(f in invertible_strategy(7)) {
            let g = f.comp_inverse().unwrap();
            prop_assert_eq!(Series1::compose(&f, &g).unwrap(), Series1::var(7));
            prop_assert_eq!(Series1::compose(&g, &f).unwrap(), Series1::var(7));
            prop_assert_eq!(g, lagrange_inverse(&f));
        }

        #[test]
        fn reciprocal_is_an_involution(mut f in series_strategy(6), c in small_rational()) {
            prop_assume!(!c.is_zero());
            f.set_coeff(0, c);
            let r = f.reciprocal().unwrap();
            prop_assert_eq!(&f * &r, Series1::one(6));
            prop_assert_eq!(r.reciprocal().unwrap(), f);
        }

        #[test]
        fn univariate_ring_axioms(
            a in series_strategy(6),
            b in series_strategy(6),
            c in series_strategy(6),
        ) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn bivariate_ring_axioms(
            a in bivariate_strategy(4),
            b in bivariate_strategy(4),
            c in bivariate_strategy(4),
        ) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b - &c), &(&a * &b) - &(&a * &c));
        }

        #[test]
        fn substitution_is_a_ring_map(
            a in bivariate_strategy(4),
            b in bivariate_strategy(4),
            sz in invertible_strategy(4),
            sw in invertible_strategy(4),
        ) {
            let lhs = (&a * &b).compose_each_variable(&sz, &sw).unwrap();
            let rhs = &a.compose_each_variable(&sz, &sw).unwrap()
                * &b.compose_each_variable(&sz, &sw).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn agreement_reports_common_order() {
        let a = s1(3, &[1, 2, 3, 4]);
        let b = s1(5, &[1, 2, 3, 4, 9, 9]);
        let ag = a.agrees_with(&b);
        assert_eq!(ag.order, 3);
        assert!(ag.holds());
        let c = s1(5, &[1, 2, 0]);
        assert_eq!(a.agrees_with(&c).first_mismatch, Some(2));
        assert_eq!("1".to_string(), Series1::one(2).to_string());
    }
}

//! Truncated bivariate power series in `t` and `q` with exact integer
//! coefficients.
//!
//! A [`BiSeries`] stores every coefficient of `t^k q^n` for `k <= k_max`,
//! `n <= n_max`. The only products supported are by a monomial and by
//! `(1 + tq)`, plus the substitution `t -> tq^2`. None of these moves
//! information towards lower degrees, so truncation never corrupts a kept
//! coefficient.

use std::fmt;
use std::io::Write;

use crate::counting::{CountTable, Role};
use crate::error::{overflow, Error, Result};

pub const DEFAULT_K_MAX: usize = 200;
pub const DEFAULT_N_MAX: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    k_max: usize,
    n_max: usize,
    coeff: Vec<i64>,
}

/// First cell, in `(n, k)` order, at which two series differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mismatch {
    pub k: usize,
    pub n: usize,
    pub lhs: i64,
    pub rhs: i64,
}

impl BiSeries {
    pub fn zero(k_max: usize, n_max: usize) -> Self {
        BiSeries {
            k_max,
            n_max,
            coeff: vec![0; (k_max + 1) * (n_max + 1)],
        }
    }

    pub fn one(k_max: usize, n_max: usize) -> Self {
        Self::monomial(1, 0, 0, k_max, n_max)
    }

    /// `c t^a q^b`, or zero when the monomial falls outside the window.
    pub fn monomial(c: i64, a: usize, b: usize, k_max: usize, n_max: usize) -> Self {
        let mut s = Self::zero(k_max, n_max);
        if a <= k_max && b <= n_max {
            s.set(a, b, c);
        }
        s
    }

    /// Builds a series from `(k, n, coeff)` terms; terms outside the window are dropped.
    pub fn from_terms(terms: &[(usize, usize, i64)], k_max: usize, n_max: usize) -> Result<Self> {
        let mut s = Self::zero(k_max, n_max);
        for &(k, n, c) in terms {
            if k <= k_max && n <= n_max {
                let v = s
                    .get(k, n)
                    .checked_add(c)
                    .ok_or(overflow("series from terms"))?;
                s.set(k, n, v);
            }
        }
        Ok(s)
    }

    /// Truncates a count table to the requested window.
    pub fn from_count_table(tbl: &CountTable, k_max: usize, n_max: usize) -> Result<Self> {
        if tbl.k_max() < k_max || tbl.n_max() < n_max {
            return Err(Error::BoundMismatch {
                lhs_k: tbl.k_max(),
                lhs_n: tbl.n_max(),
                rhs_k: k_max,
                rhs_n: n_max,
            });
        }
        let mut s = Self::zero(k_max, n_max);
        for k in 0..=k_max {
            for n in 0..=n_max {
                let v =
                    i64::try_from(tbl.at(k, n)).map_err(|_| overflow("count to coefficient"))?;
                s.set(k, n, v);
            }
        }
        debug_assert!(
            !matches!(tbl.role(), Role::Admissible | Role::LargestAtMost) || s.get(0, 0) == 1
        );
        Ok(s)
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    #[inline]
    fn idx(&self, k: usize, n: usize) -> usize {
        k * (self.n_max + 1) + n
    }

    /// Coefficient of `t^k q^n`; 0 outside the window.
    #[inline]
    pub fn get(&self, k: usize, n: usize) -> i64 {
        if k > self.k_max || n > self.n_max {
            0
        } else {
            self.coeff[self.idx(k, n)]
        }
    }

    /// Signed lookup with the zero-for-negative convention.
    pub fn coeff(&self, k: i64, n: i64) -> i64 {
        if k < 0 || n < 0 {
            0
        } else {
            self.get(k as usize, n as usize)
        }
    }

    fn set(&mut self, k: usize, n: usize, v: i64) {
        let i = self.idx(k, n);
        self.coeff[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.iter().all(|&c| c == 0)
    }

    /// Nonzero terms in ascending `(n, k)` order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        (0..=self.n_max).flat_map(move |n| {
            (0..=self.k_max).filter_map(move |k| {
                let c = self.get(k, n);
                (c != 0).then_some((k, n, c))
            })
        })
    }

    fn check_bounds(&self, other: &BiSeries) -> Result<()> {
        if self.k_max != other.k_max || self.n_max != other.n_max {
            return Err(Error::BoundMismatch {
                lhs_k: self.k_max,
                lhs_n: self.n_max,
                rhs_k: other.k_max,
                rhs_n: other.n_max,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check_bounds(other)?;
        let coeff = self
            .coeff
            .iter()
            .zip(&other.coeff)
            .map(|(a, b)| a.checked_add(*b).ok_or(overflow("series addition")))
            .collect::<Result<Vec<_>>>()?;
        Ok(BiSeries { coeff, ..*self })
    }

    /// `c t^a q^b · self`, truncated to the window.
    pub fn mul_monomial(&self, c: i64, a: usize, b: usize) -> Result<BiSeries> {
        let mut out = Self::zero(self.k_max, self.n_max);
        if c == 0 || a > self.k_max || b > self.n_max {
            return Ok(out);
        }
        for k in a..=self.k_max {
            for n in b..=self.n_max {
                let x = self.get(k - a, n - b);
                if x != 0 {
                    out.set(k, n, x.checked_mul(c).ok_or(overflow("monomial product"))?);
                }
            }
        }
        Ok(out)
    }

    /// `self(t q^2, q)`: each `t^k q^m` becomes `t^k q^{m + 2k}`.
    pub fn substitute_t_tq2(&self) -> BiSeries {
        let mut out = Self::zero(self.k_max, self.n_max);
        for k in 0..=self.k_max {
            for n in (2 * k)..=self.n_max {
                out.set(k, n, self.get(k, n - 2 * k));
            }
        }
        out
    }

    /// `(1 + tq) · self`.
    pub fn mul_one_plus_tq(&self) -> Result<BiSeries> {
        self.add(&self.mul_monomial(1, 1, 1)?)
    }

    /// Multiplies in place by `(1 + t q^b)`.
    fn mul_one_plus_tqb_in_place(&mut self, b: usize) -> Result<()> {
        if b > self.n_max || self.k_max == 0 {
            return Ok(());
        }
        for k in (1..=self.k_max).rev() {
            for n in (b..=self.n_max).rev() {
                let add = self.get(k - 1, n - b);
                if add != 0 {
                    let v = self
                        .get(k, n)
                        .checked_add(add)
                        .ok_or(overflow("factor product"))?;
                    self.set(k, n, v);
                }
            }
        }
        Ok(())
    }

    /// `∏_{j >= 0} (1 + t q^{2j+1})` truncated to the window.
    pub fn product_distinct_odd(k_max: usize, n_max: usize) -> Result<BiSeries> {
        Self::product_distinct_odd_factors(usize::MAX, k_max, n_max)
    }

    /// The first `factors` factors of the distinct-odd product.
    pub fn product_distinct_odd_factors(
        factors: usize,
        k_max: usize,
        n_max: usize,
    ) -> Result<BiSeries> {
        let mut s = Self::one(k_max, n_max);
        for (_, odd) in (1..=n_max)
            .step_by(2)
            .enumerate()
            .take_while(|(j, _)| *j < factors)
        {
            s.mul_one_plus_tqb_in_place(odd)?;
        }
        Ok(s)
    }

    /// Smallest `(n, k)` cell where the series differ, or `None` when equal.
    pub fn first_difference(&self, other: &BiSeries) -> Result<Option<Mismatch>> {
        self.check_bounds(other)?;
        for n in 0..=self.n_max {
            for k in 0..=self.k_max {
                let (l, r) = (self.get(k, n), other.get(k, n));
                if l != r {
                    return Ok(Some(Mismatch {
                        k,
                        n,
                        lhs: l,
                        rhs: r,
                    }));
                }
            }
        }
        Ok(None)
    }

    pub fn equals(&self, other: &BiSeries) -> Result<bool> {
        Ok(self.first_difference(other)?.is_none())
    }

    /// CSV with header `k,n,coeff`, nonzero coefficients in `(n, k)` order.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["k", "n", "coeff"])?;
        for (k, n, c) in self.terms() {
            w.write_record([k.to_string(), n.to_string(), c.to_string()])?;
        }
        w.flush()
    }
}

fn power(f: &mut fmt::Formatter<'_>, var: char, e: usize) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{e}"),
    }
}

/// Polynomial text in ascending `q` degree, e.g. `1 + t*q + t^2*q^4`.
impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, n, c) in self.terms() {
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            let has_vars = k > 0 || n > 0;
            if mag != 1 || !has_vars {
                write!(f, "{mag}")?;
                if has_vars {
                    f.write_str("*")?;
                }
            }
            power(f, 't', k)?;
            if k > 0 && n > 0 {
                f.write_str("*")?;
            }
            power(f, 'q', n)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

//! Count recurrences, q-difference equations and the identities used in the
//! induction on `G_{2m}`.
//!
//! Each family is stored as data and evaluated two ways: cellwise on count
//! tables (`eqd*`, `dur*`, `pif*`, e-equalities) and as truncated series
//! identities (`eq*`, main identity, limit product).

use std::borrow::Cow;

use crate::counting::CountProvider;
use crate::error::{Error, Result};
use crate::qseries::BiSeries;
use crate::report::{CheckReport, Checker};

/// `mult·N + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub mult: i64,
    pub offset: i64,
}

const fn lin(mult: i64, offset: i64) -> Affine {
    Affine { mult, offset }
}

impl Affine {
    pub fn at(self, index: i64) -> i64 {
        self.mult * index + self.offset
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `a_M`: largest part at most `M`.
    AtMost,
    /// `e_M`: largest part exactly `M`.
    Exactly,
}

/// `sign · x_bound(k - dk, n - dn)` where `x` is `a` or `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub sign: i64,
    pub family: Family,
    pub bound: Affine,
    pub dk: i64,
    pub dn: Affine,
}

const fn a(bound: Affine, dk: i64, dn: Affine) -> Term {
    Term {
        sign: 1,
        family: Family::AtMost,
        bound,
        dk,
        dn,
    }
}

const fn e(bound: Affine, dk: i64, dn: Affine) -> Term {
    Term {
        sign: 1,
        family: Family::Exactly,
        bound,
        dk,
        dn,
    }
}

const fn minus(t: Term) -> Term {
    Term { sign: -t.sign, ..t }
}

const NONE: Affine = lin(0, 0);

/// `Σ lhs = Σ rhs`, instantiated at an index `N`.
#[derive(Debug, Clone, Copy)]
pub struct Identity {
    pub name: &'static str,
    pub lhs: &'static [Term],
    pub rhs: &'static [Term],
}

impl Identity {
    fn eval<P: CountProvider + ?Sized>(
        terms: &[Term],
        p: &P,
        index: i64,
        k: i64,
        n: i64,
    ) -> Result<i64> {
        terms.iter().try_fold(0i64, |acc, t| {
            let (b, kk, nn) = (t.bound.at(index), k - t.dk, n - t.dn.at(index));
            let v = match t.family {
                Family::AtMost => p.a(b, kk, nn)?,
                Family::Exactly => p.e(b, kk, nn)?,
            };
            Ok(acc + t.sign * v)
        })
    }

    pub fn lhs_at<P: CountProvider + ?Sized>(
        &self,
        p: &P,
        index: i64,
        k: i64,
        n: i64,
    ) -> Result<i64> {
        Self::eval(self.lhs, p, index, k, n)
    }

    pub fn rhs_at<P: CountProvider + ?Sized>(
        &self,
        p: &P,
        index: i64,
        k: i64,
        n: i64,
    ) -> Result<i64> {
        Self::eval(self.rhs, p, index, k, n)
    }

    /// Largest `a`/`e` index the identity touches at `index`.
    pub fn max_bound(&self, index: i64) -> i64 {
        self.lhs
            .iter()
            .chain(self.rhs)
            .map(|t| t.bound.at(index))
            .max()
            .unwrap_or(0)
    }
}

/// One step `G_{8N+r} = G_{8N+r-1} + Σ t^{dk} q^{dn} G_{bound}` of the
/// largest-part recurrence, in both its count and series readings.
#[derive(Debug, Clone, Copy)]
pub struct Recurrence {
    pub count_name: &'static str,
    pub series_name: &'static str,
    pub residue: i64,
    /// `(bound, dk, dn)` of every shifted term.
    pub shifts: &'static [(Affine, i64, Affine)],
}

impl Recurrence {
    pub fn target(&self, index: i64) -> i64 {
        8 * index + self.residue
    }
}

/// Indexed by `M mod 8`.
pub const RECURRENCES: [Recurrence; 8] = [
    Recurrence {
        count_name: "eqd1",
        series_name: "eq1",
        residue: 0,
        shifts: &[(lin(8, -7), 2, lin(8, 0))],
    },
    Recurrence {
        count_name: "eqd2",
        series_name: "eq2",
        residue: 1,
        shifts: &[(lin(8, -4), 1, lin(8, 1))],
    },
    Recurrence {
        count_name: "eqd3",
        series_name: "eq3",
        residue: 2,
        shifts: &[(lin(8, -7), 2, lin(8, 2))],
    },
    Recurrence {
        count_name: "eqd4",
        series_name: "eq4",
        residue: 3,
        shifts: &[(lin(8, -3), 1, lin(8, 3))],
    },
    Recurrence {
        count_name: "eqd5",
        series_name: "eq5",
        residue: 4,
        shifts: &[(lin(8, -3), 2, lin(8, 4)), (lin(8, -7), 3, lin(16, 3))],
    },
    Recurrence {
        count_name: "eqd6",
        series_name: "eq6",
        residue: 5,
        shifts: &[(lin(8, -3), 1, lin(8, 5)), (lin(8, -7), 2, lin(16, 4))],
    },
    Recurrence {
        count_name: "eqd7",
        series_name: "eq7",
        residue: 6,
        shifts: &[(lin(8, -3), 2, lin(8, 6)), (lin(8, -7), 3, lin(16, 5))],
    },
    Recurrence {
        count_name: "eqd8",
        series_name: "eq8",
        residue: 7,
        shifts: &[(lin(8, 1), 1, lin(8, 7))],
    },
];

/// Identities for the case analysis of the induction, valid for `N >= 2`.
pub const AUX_IDENTITIES: [Identity; 9] = [
    Identity {
        name: "dur1",
        lhs: &[e(lin(8, 1), 0, NONE)],
        rhs: &[a(lin(8, -4), 1, lin(8, 1))],
    },
    Identity {
        name: "dur2",
        lhs: &[e(lin(8, 2), 0, NONE)],
        rhs: &[a(lin(8, -8), 2, lin(8, 2)), a(lin(8, -12), 3, lin(16, -5))],
    },
    Identity {
        name: "dur3",
        lhs: &[e(lin(8, 3), 0, NONE)],
        rhs: &[
            a(lin(8, -2), 1, lin(8, 3)),
            minus(e(lin(8, -3), 2, lin(8, 4))),
        ],
    },
    Identity {
        name: "dur4",
        lhs: &[e(lin(8, 4), 0, NONE)],
        rhs: &[
            a(lin(8, -4), 2, lin(8, 4)),
            e(lin(8, -3), 2, lin(8, 4)),
            a(lin(8, -8), 3, lin(16, 3)),
            a(lin(8, -12), 4, lin(24, -4)),
        ],
    },
    Identity {
        name: "pif1",
        lhs: &[e(lin(8, 5), 0, NONE)],
        rhs: &[
            a(lin(8, 0), 1, lin(8, 5)),
            minus(e(lin(8, 0), 1, lin(8, 5))),
            minus(e(lin(8, -2), 1, lin(8, 5))),
        ],
    },
    Identity {
        name: "pif2",
        lhs: &[e(lin(8, 6), 0, NONE)],
        rhs: &[
            a(lin(8, -4), 2, lin(8, 6)),
            e(lin(8, -1), 2, lin(8, 6)),
            e(lin(8, -3), 2, lin(8, 6)),
        ],
    },
    Identity {
        name: "pif3",
        lhs: &[a(lin(8, 6), 0, NONE)],
        rhs: &[
            a(lin(8, 4), 0, NONE),
            e(lin(8, 5), 0, NONE),
            e(lin(8, 6), 0, NONE),
        ],
    },
    Identity {
        name: "e_equality_1",
        lhs: &[e(lin(8, 0), 1, lin(8, 5))],
        rhs: &[e(lin(8, -1), 2, lin(8, 6))],
    },
    Identity {
        name: "e_equality_2",
        lhs: &[e(lin(8, -2), 1, lin(8, 5))],
        rhs: &[e(lin(8, -3), 2, lin(8, 6))],
    },
];

/// Names accepted in [`EquationId`].
pub const CATALOGUE: &[&str] = &[
    "eqd1",
    "eqd2",
    "eqd3",
    "eqd4",
    "eqd5",
    "eqd6",
    "eqd7",
    "eqd8",
    "eq1",
    "eq2",
    "eq3",
    "eq4",
    "eq5",
    "eq6",
    "eq7",
    "eq8",
    "dur1",
    "dur2",
    "dur3",
    "dur4",
    "pif1",
    "pif2",
    "pif3",
    "e_equality_1",
    "e_equality_2",
    "main",
    "limit_product",
];

/// A named identity instantiated at an index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationId {
    name: &'static str,
    index: i64,
}

impl EquationId {
    pub fn new(name: &str, index: i64) -> Result<Self> {
        let name = CATALOGUE
            .iter()
            .find(|&&c| c == name)
            .ok_or_else(|| Error::Domain(format!("unknown equation {name}")))?;
        Ok(EquationId { name, index })
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn index(&self) -> i64 {
        self.index
    }
}

fn window<P: CountProvider + ?Sized>(p: &P) -> impl Iterator<Item = (i64, i64)> {
    let (k_max, n_max) = (p.k_max() as i64, p.n_max() as i64);
    (0..=n_max).flat_map(move |n| (0..=k_max).map(move |k| (k, n)))
}

/// Largest-part recurrences `eqd1..eqd8` at index `N`, on every cell of the
/// window. Equations whose target index exceeds `n_max` are skipped.
pub fn check_eqd<P: CountProvider + ?Sized>(index: i64, p: &P) -> CheckReport {
    Checker::new("eqd").param("N", index).run(|c| {
        if index < 1 {
            return Err(Error::Domain(format!("eqd needs N >= 1, got {index}")));
        }
        for r in RECURRENCES
            .iter()
            .filter(|r| r.target(index) <= p.n_max() as i64)
        {
            c.declare(r.count_name);
            let target = r.target(index);
            for (k, n) in window(p) {
                let lhs = p.a(target, k, n)?;
                let mut rhs = p.a(target - 1, k, n)?;
                for &(bound, dk, dn) in r.shifts {
                    rhs += p.a(bound.at(index), k - dk, n - dn.at(index))?;
                }
                c.compare(r.count_name, k, n, lhs, rhs);
            }
        }
        Ok(())
    })
}

/// Source of `G_M(t, q)` on a fixed window. `G_M = 1` for `M <= 0`.
pub trait SeriesProvider: Sync {
    fn k_max(&self) -> usize;
    fn n_max(&self) -> usize;
    fn series(&self, m: i64) -> Result<Cow<'_, BiSeries>>;
}

/// `G_M` read off `a_M` count tables.
pub struct TableSeries<'a, P: CountProvider + ?Sized> {
    counts: &'a P,
}

impl<'a, P: CountProvider + ?Sized> TableSeries<'a, P> {
    pub fn new(counts: &'a P) -> Self {
        TableSeries { counts }
    }
}

impl<P: CountProvider + ?Sized> SeriesProvider for TableSeries<'_, P> {
    fn k_max(&self) -> usize {
        self.counts.k_max()
    }

    fn n_max(&self) -> usize {
        self.counts.n_max()
    }

    fn series(&self, m: i64) -> Result<Cow<'_, BiSeries>> {
        let (k_max, n_max) = (self.k_max(), self.n_max());
        if m <= 0 {
            return Ok(Cow::Owned(BiSeries::one(k_max, n_max)));
        }
        let mut terms = Vec::new();
        for k in 0..=k_max {
            for n in 0..=n_max {
                let v = self.counts.a(m, k as i64, n as i64)?;
                if v != 0 {
                    terms.push((k, n, v));
                }
            }
        }
        Ok(Cow::Owned(BiSeries::from_terms(&terms, k_max, n_max)?))
    }
}

/// `G_{8N+r-1} + Σ t^{dk} q^{dn} G_bound` evaluated on series.
fn recurrence_rhs<S: SeriesProvider + ?Sized>(
    r: &Recurrence,
    index: i64,
    s: &S,
) -> Result<BiSeries> {
    let mut acc = s.series(r.target(index) - 1)?.into_owned();
    for &(bound, dk, dn) in r.shifts {
        let g = s.series(bound.at(index))?;
        let shifted = g.mul_monomial(1, dk as usize, dn.at(index) as usize)?;
        acc = acc.add(&shifted)?;
    }
    Ok(acc)
}

/// q-difference equations `eq1..eq8` at index `N` as series identities.
/// Equations whose target index exceeds `n_max` are skipped.
pub fn check_eq<S: SeriesProvider + ?Sized>(index: i64, s: &S) -> CheckReport {
    Checker::new("eq").param("N", index).run(|c| {
        if index < 1 {
            return Err(Error::Domain(format!("eq needs N >= 1, got {index}")));
        }
        for r in RECURRENCES
            .iter()
            .filter(|r| r.target(index) <= s.n_max() as i64)
        {
            c.declare(r.series_name);
            let lhs = s.series(r.target(index))?;
            let rhs = recurrence_rhs(r, index, s)?;
            compare_series(c, r.series_name, &lhs, &rhs)?;
        }
        Ok(())
    })
}

fn compare_series(c: &mut Checker, name: &str, lhs: &BiSeries, rhs: &BiSeries) -> Result<()> {
    match lhs.first_difference(rhs)? {
        None => {
            c.declare(name);
            c.add_cases(((lhs.k_max() + 1) * (lhs.n_max() + 1)) as u64);
        }
        Some(m) => {
            c.compare(name, m.k as i64, m.n as i64, m.lhs, m.rhs);
        }
    }
    Ok(())
}

/// `dur1..dur4`, `pif1..pif3` and the two e-equalities at index `N >= 2`.
/// Identities that reference an index above `n_max` are skipped.
pub fn check_aux_identities<P: CountProvider + ?Sized>(index: i64, p: &P) -> CheckReport {
    Checker::new("aux").param("N", index).run(|c| {
        if index < 2 {
            return Err(Error::Domain(format!(
                "auxiliary identities need N >= 2, got {index}"
            )));
        }
        for id in AUX_IDENTITIES
            .iter()
            .filter(|id| id.max_bound(index) <= p.n_max() as i64)
        {
            c.declare(id.name);
            let subtracts = id.rhs.iter().any(|t| t.sign < 0);
            for (k, n) in window(p) {
                let lhs = id.lhs_at(p, index, k, n)?;
                let rhs = id.rhs_at(p, index, k, n)?;
                c.compare(id.name, k, n, lhs, rhs);
                if subtracts && rhs < 0 {
                    c.compare(&format!("{}_nonnegative", id.name), k, n, rhs, 0);
                }
            }
        }
        Ok(())
    })
}

/// Expanded `G_0 ..= G_7` as `(k, n, coeff)` terms.
pub const INITIAL_CONDITIONS: [&[(usize, usize, i64)]; 8] = [
    &[(0, 0, 1)],
    &[(0, 0, 1), (1, 1, 1)],
    &[(0, 0, 1), (1, 1, 1)],
    &[(0, 0, 1), (1, 1, 1), (1, 3, 1)],
    &[(0, 0, 1), (1, 1, 1), (1, 3, 1), (2, 4, 1)],
    &[(0, 0, 1), (1, 1, 1), (1, 3, 1), (2, 4, 1), (1, 5, 1)],
    &[
        (0, 0, 1),
        (1, 1, 1),
        (1, 3, 1),
        (2, 4, 1),
        (1, 5, 1),
        (2, 6, 1),
    ],
    &[
        (0, 0, 1),
        (1, 1, 1),
        (1, 3, 1),
        (2, 4, 1),
        (1, 5, 1),
        (2, 6, 1),
        (1, 7, 1),
        (2, 8, 1),
    ],
];

/// `G_0 ..= G_top` built from the initial conditions and `eq1..eq8` alone,
/// never from partition counts.
#[derive(Debug, Clone)]
pub struct GFamily {
    k_max: usize,
    n_max: usize,
    series: Vec<BiSeries>,
}

impl GFamily {
    pub fn build(top: usize, k_max: usize, n_max: usize) -> Result<Self> {
        let mut family = GFamily {
            k_max,
            n_max,
            series: Vec::with_capacity(top + 1),
        };
        for m in 0..=top {
            let g = if m < 8 {
                BiSeries::from_terms(INITIAL_CONDITIONS[m], k_max, n_max)?
            } else {
                let r = &RECURRENCES[m % 8];
                recurrence_rhs(r, (m / 8) as i64, &family)?
            };
            family.series.push(g);
        }
        Ok(family)
    }

    pub fn top(&self) -> i64 {
        self.series.len() as i64 - 1
    }
}

impl SeriesProvider for GFamily {
    fn k_max(&self) -> usize {
        self.k_max
    }

    fn n_max(&self) -> usize {
        self.n_max
    }

    fn series(&self, m: i64) -> Result<Cow<'_, BiSeries>> {
        if m <= 0 {
            return Ok(Cow::Owned(BiSeries::one(self.k_max, self.n_max)));
        }
        self.series
            .get(m as usize)
            .map(Cow::Borrowed)
            .ok_or(Error::IndexUnavailable {
                index: m,
                max: self.top(),
            })
    }
}

/// `G_M` from the initial conditions and the q-difference equations.
#[allow(non_snake_case)]
pub fn build_G_recurrence(m: i64, k_max: usize, n_max: usize) -> Result<BiSeries> {
    if m <= 0 {
        return Ok(BiSeries::one(k_max, n_max));
    }
    let family = GFamily::build(m as usize, k_max, n_max)?;
    Ok(family
        .series
        .into_iter()
        .last()
        .expect("family is non-empty"))
}

/// `G_{2m} = (1 + tq) G_{2m-3}(tq^2, q)`.
pub fn check_main_identity<S: SeriesProvider + ?Sized>(m: i64, s: &S) -> CheckReport {
    Checker::new("main").param("m", m).run(|c| {
        if m < 1 {
            return Err(Error::Domain(format!(
                "main identity needs m >= 1, got {m}"
            )));
        }
        let lhs = s.series(2 * m)?;
        let rhs = s.series(2 * m - 3)?.substitute_t_tq2().mul_one_plus_tq()?;
        compare_series(c, "main", &lhs, &rhs)
    })
}

/// The `a_{n_max}` series against the distinct-odd product, and `A` against
/// `B` cellwise.
pub fn check_limit_product<P: CountProvider + ?Sized>(p: &P) -> CheckReport {
    let (k_max, n_max) = (p.k_max(), p.n_max());
    Checker::new("limit_product")
        .param("k_max", k_max as i64)
        .param("n_max", n_max as i64)
        .run(|c| {
            let g = TableSeries::new(p).series(n_max as i64)?.into_owned();
            let product = BiSeries::product_distinct_odd(k_max, n_max)?;
            compare_series(c, "limit_product", &g, &product)?;
            let b = crate::counting::count_B(k_max, n_max)?;
            c.declare("A_equals_B");
            for (k, n) in window(p) {
                let av = p.a(n_max as i64, k, n)?;
                let bv = b.get(k, n)? as i64;
                c.compare("A_equals_B", k, n, av, bv);
            }
            Ok(())
        })
}

/// `build_G_recurrence(M)` against the `a_M` table.
pub fn check_recurrence_agreement<S, T>(m: i64, recurrence: &S, tables: &T) -> CheckReport
where
    S: SeriesProvider + ?Sized,
    T: SeriesProvider + ?Sized,
{
    Checker::new("recurrence_agreement").param("M", m).run(|c| {
        let lhs = recurrence.series(m)?;
        let rhs = tables.series(m)?;
        compare_series(c, "recurrence_vs_counts", &lhs, &rhs)
    })
}

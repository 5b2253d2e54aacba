//! Guessing linear recurrences with polynomial coefficients.
//!
//! A candidate of order `r` is a list `c_0(n), ..., c_r(n)` of polynomials
//! with `sum_i c_i(n) u_{n+i} = 0` for every admissible `n`. Sequences are
//! indexed from 1, so `seq[0]` is `u_1`.
//!
//! [`guess`] uses undetermined coefficients: for each `(order, degree)` in
//! lexicographic order it writes the coefficients of the `c_i` as unknowns,
//! builds one linear equation per `n` in a fitting window that has `guard`
//! more equations than unknowns, and solves for the exact nullspace. A
//! nullspace vector only becomes the answer if the recurrence also holds on
//! every term outside the window.

mod nullspace;

use dashu_int::{IBig, UBig};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int_content, int_gcd, nat_lcm, BigRat, Poly};

pub use nullspace::{nullspace, rank_mod_prime};

/// Default number of equations beyond the unknown count.
pub const DEFAULT_GUARD: usize = 5;

/// `sum_{i=0..order} coeffs[i](n) * u_{n+i} = 0`, normalized so that the
/// coefficients are coprime integers and the leading coefficient of
/// `coeffs[order]` is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RecurrenceCandidate {
    order: usize,
    coeffs: Vec<Poly>,
}

impl RecurrenceCandidate {
    /// Normalizes `coeffs` (at least two, last one nonzero).
    pub fn new(coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Invalid("a recurrence needs order >= 1".into()));
        }
        let lead = coeffs.last().expect("nonempty").leading();
        if lead.is_zero() {
            return Err(Error::Invalid("the last coefficient polynomial is zero".into()));
        }
        let mut lcm = UBig::ONE;
        for c in coeffs.iter().flat_map(|p| p.coeffs()) {
            lcm = nat_lcm(&lcm, c.denom());
        }
        let mut g = IBig::ZERO;
        for c in coeffs.iter().flat_map(|p| p.coeffs()) {
            g = int_gcd(&g, &(c.numer() * (&lcm / c.denom())));
        }
        if lead.is_negative() {
            g = -g;
        }
        let scale = BigRat::new(IBig::from(lcm), g)?;
        let coeffs: Vec<Poly> = coeffs.iter().map(|p| p.scale(&scale)).collect();
        Ok(RecurrenceCandidate { order: coeffs.len() - 1, coeffs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Largest coefficient degree.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// Degrees of `c_0, ..., c_r` (`None` for a zero polynomial).
    pub fn degree_profile(&self) -> Vec<Option<usize>> {
        self.coeffs.iter().map(Poly::degree).collect()
    }

    /// `sum_i c_i(n) u_{n+i}` for 1-based `n`; needs `n + order <= seq.len()`.
    pub fn residual(&self, seq: &[BigRat], n: usize) -> BigRat {
        let nn = BigRat::from_int(n as i64);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.eval(&nn) * &seq[n + i - 1])
            .sum()
    }

    /// Human-readable form, e.g. `(1)*u(n+2) + (-1)*u(n+1) + (-1)*u(n) = 0`.
    pub fn display(&self) -> String {
        let terms: Vec<String> = (0..=self.order)
            .rev()
            .filter(|&i| !self.coeffs[i].is_zero())
            .map(|i| {
                let shift = if i == 0 { "n".to_string() } else { format!("n+{i}") };
                format!("({})*u({shift})", self.coeffs[i].display_with("n"))
            })
            .collect();
        format!("{} = 0", terms.join(" + "))
    }
}

impl<'de> Deserialize<'de> for RecurrenceCandidate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: usize,
            coeffs: Vec<Poly>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(serde::de::Error::custom(format!(
                "order {} needs {} coefficient polynomials, got {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            )));
        }
        RecurrenceCandidate::new(raw.coeffs).map_err(serde::de::Error::custom)
    }
}

/// Range of `n` whose equations were solved exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitWindow {
    pub first: usize,
    pub last: usize,
}

/// A candidate together with the window it was fitted on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Guess {
    #[serde(flatten)]
    pub candidate: RecurrenceCandidate,
    pub window: FitWindow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GuessOptions {
    pub max_order: usize,
    pub max_degree: usize,
    pub guard: usize,
}

impl GuessOptions {
    pub fn new(max_order: usize, max_degree: usize) -> Self {
        GuessOptions { max_order, max_degree, guard: DEFAULT_GUARD }
    }

    pub fn with_guard(self, guard: usize) -> Self {
        GuessOptions { guard, ..self }
    }

    /// Terms needed to search the whole `(order, degree)` range.
    pub fn min_terms(&self) -> usize {
        unknowns(self.max_order, self.max_degree) + self.max_order + self.guard
    }
}

fn unknowns(order: usize, degree: usize) -> usize {
    (order + 1) * (degree + 1)
}

/// Searches `(order, degree)` pairs, order first, for the first recurrence
/// that fits `seq` entirely. `Ok(None)` means nothing in range fits, or the
/// sequence is identically zero.
pub fn guess(seq: &[BigRat], opts: GuessOptions) -> Result<Option<Guess>> {
    if opts.max_order == 0 {
        return Err(Error::Invalid("max order must be at least 1".into()));
    }
    if opts.guard == 0 {
        return Err(Error::Invalid("guard must be at least 1".into()));
    }
    let needed = opts.min_terms();
    if seq.len() < needed {
        return Err(Error::InsufficientTerms { needed, got: seq.len() });
    }
    if seq.iter().all(BigRat::is_zero) {
        return Ok(None);
    }
    for order in 1..=opts.max_order {
        for degree in 0..=opts.max_degree {
            if let Some(g) = guess_at(seq, order, degree, opts.guard)? {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

/// Tries a single `(order, degree)` pair.
pub fn guess_at(seq: &[BigRat], order: usize, degree: usize, guard: usize) -> Result<Option<Guess>> {
    let cols = unknowns(order, degree);
    let neqs = cols + guard;
    let needed = neqs + order;
    if seq.len() < needed {
        return Err(Error::InsufficientTerms { needed, got: seq.len() });
    }
    let rows: Vec<Vec<IBig>> = (1..=neqs).map(|n| equation(seq, n, order, degree)).collect();
    if rank_mod_prime(&rows, cols) == cols {
        return Ok(None);
    }
    let mut candidates: Vec<RecurrenceCandidate> = nullspace(rows, cols)
        .into_iter()
        .filter_map(|v| {
            let coeffs = v
                .chunks(degree + 1)
                .map(Poly::from_int_coeffs)
                .collect::<Vec<_>>();
            RecurrenceCandidate::new(coeffs).ok()
        })
        .collect();
    candidates.sort_by_key(RecurrenceCandidate::degree_profile);
    Ok(candidates
        .into_iter()
        .find(|c| verify(c, seq).is_none())
        .map(|candidate| Guess { candidate, window: FitWindow { first: 1, last: neqs } }))
}

// Integer row for the equation at `n`: entries n^k u_{n+i}, cleared of
// denominators and content.
fn equation(seq: &[BigRat], n: usize, order: usize, degree: usize) -> Vec<IBig> {
    let window = &seq[n - 1..n + order];
    let mut lcm = UBig::ONE;
    for u in window {
        lcm = nat_lcm(&lcm, u.denom());
    }
    let nn = IBig::from(n);
    let mut row = Vec::with_capacity(unknowns(order, degree));
    for u in window {
        let mut v = u.numer() * (&lcm / u.denom());
        for _ in 0..=degree {
            row.push(v.clone());
            v *= &nn;
        }
    }
    let g = int_content(&row);
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
    row
}

/// The smallest `n` at which `cand` fails on `seq`, or `None` if it holds
/// wherever it can be checked.
pub fn verify(cand: &RecurrenceCandidate, seq: &[BigRat]) -> Option<usize> {
    let last = seq.len().checked_sub(cand.order)?;
    (1..=last).find(|&n| !cand.residual(seq, n).is_zero())
}

/// Runs the recurrence forward from `seed = [u_1..u_r]` to produce
/// `u_1..u_upto`.
pub fn extend(cand: &RecurrenceCandidate, seed: &[BigRat], upto: usize) -> Result<Vec<BigRat>> {
    let r = cand.order;
    if seed.len() != r {
        return Err(Error::Invalid(format!("order {r} needs {r} seed terms, got {}", seed.len())));
    }
    let mut out: Vec<BigRat> = seed.iter().take(upto).cloned().collect();
    let mut n = 1;
    while out.len() < upto {
        let nn = BigRat::from_int(n as i64);
        let lead = cand.coeffs[r].eval(&nn);
        if lead.is_zero() {
            return Err(Error::SingularLeading { n });
        }
        let rest: BigRat = (0..r).map(|i| cand.coeffs[i].eval(&nn) * &out[n + i - 1]).sum();
        out.push((-rest).checked_div(&lead)?);
        n += 1;
    }
    Ok(out)
}

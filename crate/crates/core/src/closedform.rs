//! Closed forms for the BCMV sums and the identity checks built on them.
//!
//! * `B_p(x) = 12 p^2 (p - x) / (x (x+1) (x-1))`
//! * `A_p(x) = p (p-1) (3p^2 - 4xp - 3p + 2x) / (x (x-1) (x+1))`, so `A_p(p) = -p`
//! * `C_p(p) = p (p+1)^2`, checked numerically
//!
//! The scans over `p` evaluate at `x = p`. That needs a fresh table per `p`
//! (every weight depends on `x`), so distinct `p` are independent jobs and
//! are spread over the pool; within one job the table is built sequentially
//! from `p = 1`.

use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::dp::{dp_b, SumTable};
use crate::error::Result;
use crate::exact::{BigRat, Poly, RatFunc, Scalar};
use crate::exec::Exec;
use crate::weights::{Bcmv, Form};

/// `x^3 - x`
fn cubic_den() -> Poly {
    Poly::from_ints(&[0, -1, 0, 1])
}

fn int(n: usize) -> BigRat {
    BigRat::from_int(n as i64)
}

/// `12 p^2 (p - x) / (x (x+1) (x-1))`.
pub fn closed_b(p: usize) -> RatFunc {
    let p2 = (p * p) as i64;
    let num = Poly::from_ints(&[12 * p2 * p as i64, -12 * p2]);
    RatFunc::new(num, cubic_den()).expect("nonzero denominator")
}

/// `p (p-1) (3p^2 - 4xp - 3p + 2x) / (x (x-1) (x+1))`.
pub fn closed_a(p: usize) -> RatFunc {
    let p = p as i64;
    let lead = p * (p - 1);
    let num = Poly::from_ints(&[lead * (3 * p * p - 3 * p), lead * (2 - 4 * p)]);
    RatFunc::new(num, cubic_den()).expect("nonzero denominator")
}

/// Which identity a report is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Check {
    /// `A_p(p) = -p`
    #[serde(rename = "conj3")]
    Conj3,
    /// `C_p(p) = p (p+1)^2`
    #[serde(rename = "conj4")]
    Conj4,
    /// quadratic-time `b_p` equals [`closed_b`]
    #[serde(rename = "closedB")]
    ClosedB,
    /// prefix sums of [`closed_b`] equal [`closed_a`]
    #[serde(rename = "closedA")]
    ClosedA,
    /// [`closed_b`] satisfies the specialized `b_p` recurrence
    #[serde(rename = "rec5")]
    Rec5,
}

/// Outcome of one `p` in a scan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub p: usize,
    pub expected: serde_json::Value,
    pub got: serde_json::Value,
    #[serde(rename = "status", serialize_with = "pass_fail")]
    pub ok: bool,
}

fn pass_fail<S: Serializer>(ok: &bool, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(if *ok { "pass" } else { "fail" })
}

impl Outcome {
    fn new<S: Scalar>(p: usize, expected: &S, got: &S) -> Self {
        Outcome { p, expected: expected.to_json(), got: got.to_json(), ok: expected == got }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Pass,
    /// The smallest violating `p` with both exact values.
    Fail(Outcome),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureReport {
    pub name: Check,
    pub pmax: usize,
    pub status: Status,
    pub elapsed: Duration,
    /// Every `p` that was checked, in increasing order.
    pub outcomes: Vec<Outcome>,
}

impl ConjectureReport {
    fn finish(name: Check, pmax: usize, outcomes: Vec<Outcome>, start: Instant) -> Self {
        let status = match outcomes.iter().find(|o| !o.ok) {
            Some(o) => Status::Fail(o.clone()),
            None => Status::Pass,
        };
        ConjectureReport { name, pmax, status, elapsed: start.elapsed(), outcomes }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn first_fail(&self) -> Option<&Outcome> {
        match &self.status {
            Status::Pass => None,
            Status::Fail(o) => Some(o),
        }
    }

    pub fn violations(&self) -> usize {
        self.outcomes.iter().filter(|o| !o.ok).count()
    }
}

impl Serialize for ConjectureReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Report<'a> {
            name: Check,
            pmax: usize,
            status: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            first_fail: Option<&'a Outcome>,
            elapsed_ms: u128,
        }
        Report {
            name: self.name,
            pmax: self.pmax,
            status: if self.passed() { "pass" } else { "fail" },
            first_fail: self.first_fail(),
            elapsed_ms: self.elapsed.as_millis(),
        }
        .serialize(s)
    }
}

/// Scan behaviour shared by the checks.
#[derive(Clone, Copy, Debug, Default)]
pub struct ScanOptions {
    /// Keep checking after the first violation.
    pub keep_going: bool,
    pub exec: Exec,
    /// Called with the largest `p` finished so far.
    pub progress: Option<fn(usize)>,
}

// Runs `check` for p in `range` and stops after the first violation unless
// asked not to. Work is distributed over the pool in batches so that an
// early failure does not pay for the whole range.
fn scan(
    range: std::ops::RangeInclusive<usize>,
    opts: ScanOptions,
    check: impl Fn(usize) -> Result<Outcome> + Sync + Send,
) -> Result<Vec<Outcome>> {
    let (lo, hi) = (*range.start(), *range.end());
    let batch = if opts.exec.is_parallel() { 64 } else { 1 };
    let mut out = Vec::new();
    let mut start = lo;
    while start <= hi {
        let end = (start + batch - 1).min(hi);
        let chunk = opts.exec.try_map(start..end + 1, &check)?;
        let failed = chunk.iter().any(|o| !o.ok);
        out.extend(chunk);
        if let Some(report) = opts.progress {
            report(end);
        }
        if failed && !opts.keep_going {
            if let Some(k) = out.iter().position(|o| !o.ok) {
                out.truncate(k + 1);
            }
            break;
        }
        start = end + 1;
    }
    Ok(out)
}

/// Checks that `closed` satisfies, for every `p <= pmax` and with `x`
/// symbolic,
///
/// `B_p = -12 p (x-p) / (x^3 - x + p - p^3) * (p + sum_{p'<p} (p-p')/(x-p') B_{p'})`.
pub fn check_recurrence5_with(
    pmax: usize,
    opts: ScanOptions,
    closed: impl Fn(usize) -> RatFunc + Sync + Send,
) -> Result<ConjectureReport> {
    let start = Instant::now();
    let outcomes = scan(1..=pmax, opts, |p| {
        let pi = p as i64;
        let mut inner = RatFunc::from_int(pi);
        for q in 1..p {
            let ratio = RatFunc::new(
                Poly::constant(BigRat::from_int(pi - q as i64)),
                Poly::linear_root(int(q)),
            )?;
            inner = inner + &(ratio * &closed(q));
        }
        let factor = RatFunc::new(
            Poly::from_ints(&[12 * pi * pi, -12 * pi]),
            Poly::from_ints(&[pi - pi * pi * pi, -1, 0, 1]),
        )?;
        let rhs = factor * &inner;
        Ok(Outcome::new(p, &rhs, &closed(p)))
    })?;
    Ok(ConjectureReport::finish(Check::Rec5, pmax, outcomes, start))
}

/// [`check_recurrence5_with`] applied to [`closed_b`].
pub fn check_recurrence5(pmax: usize, opts: ScanOptions) -> Result<ConjectureReport> {
    check_recurrence5_with(pmax, opts, closed_b)
}

/// Symbolic quadratic-time `b_p` against [`closed_b`] for `p <= pmax`.
pub fn verify_closed_b(pmax: usize, form: Form, opts: ScanOptions) -> Result<ConjectureReport> {
    let start = Instant::now();
    let b = dp_b(&Bcmv::symbolic(form), pmax, opts.exec)?;
    let outcomes = scan(1..=pmax, opts, |p| Ok(Outcome::new(p, &closed_b(p), &b[p - 1])))?;
    Ok(ConjectureReport::finish(Check::ClosedB, pmax, outcomes, start))
}

/// `sum_{p'<p} closed_b(p') = closed_a(p)` for `p <= pmax`.
pub fn verify_closed_a(pmax: usize, opts: ScanOptions) -> Result<ConjectureReport> {
    let start = Instant::now();
    let mut acc = RatFunc::zero();
    let mut outcomes = Vec::with_capacity(pmax);
    for p in 1..=pmax {
        let o = Outcome::new(p, &closed_a(p), &acc);
        let failed = !o.ok;
        outcomes.push(o);
        if failed && !opts.keep_going {
            break;
        }
        acc = acc + &closed_b(p);
    }
    Ok(ConjectureReport::finish(Check::ClosedA, pmax, outcomes, start))
}

/// `A_p(p) = -p` for `p = 2..=pmax`, by fixed-`x` evaluation at `x = p`
/// with the reduced weights, cross-checked against [`closed_a`].
pub fn verify_conj3(pmax: usize, opts: ScanOptions) -> Result<ConjectureReport> {
    let start = Instant::now();
    let outcomes = scan(2..=pmax, opts, |p| {
        let x0 = int(p);
        let b = dp_b(&Bcmv::fixed(x0.clone(), Form::Reduced), p, Exec::Sequential)?;
        let a_p: BigRat = b[..p - 1].iter().cloned().sum();
        let expected = -int(p);
        let from_closed = closed_a(p).eval(&x0)?;
        if a_p == expected && from_closed != expected {
            return Ok(Outcome::new(p, &expected, &from_closed));
        }
        Ok(Outcome::new(p, &expected, &a_p))
    })?;
    Ok(ConjectureReport::finish(Check::Conj3, pmax, outcomes, start))
}

/// `C_p(p) = p (p+1)^2` for `p = 2..=pmax`, by fixed-`x` evaluation at
/// `x = p` with the reduced weights.
pub fn verify_conj4(pmax: usize, opts: ScanOptions) -> Result<ConjectureReport> {
    let start = Instant::now();
    let outcomes = scan(2..=pmax, opts, |p| {
        let got = conj4_value(p)?;
        Ok(Outcome::new(p, &int(p * (p + 1) * (p + 1)), &got))
    })?;
    Ok(ConjectureReport::finish(Check::Conj4, pmax, outcomes, start))
}

/// `C_p(p)` from a fixed-`x` table at `x = p`.
pub fn conj4_value(p: usize) -> Result<BigRat> {
    let table = SumTable::compute(&Bcmv::fixed(int(p), Form::Reduced), p, Exec::Sequential)?;
    Ok(table.c[p - 1].clone())
}

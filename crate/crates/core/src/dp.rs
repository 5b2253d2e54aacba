//! Quadratic-time evaluation of the lattice sums.
//!
//! Splitting the chains with maximum `p` by their second-largest element
//! `p'` gives
//!
//! ```text
//! b_p = f1(p)       + sum_{p'<p} f2(p', p) * b_{p'}
//! d_p = f1(p) g1(p) + sum_{p'<p} f2(p', p) * (d_{p'} + g2(p', p) * b_{p'})
//! ```
//!
//! since appending `p` multiplies `W` by `f2` and adds `g2` to `V`, so that
//! `(W V)(c) = f2 (W V)(c') + f2 g2 W(c')`. The singleton chain `[p]`
//! contributes the leading term. `a` and `c` are prefix sums of `b` and `d`.
//!
//! The outer loop over `p` is sequential; each inner sum over `p'` is an
//! independent reduction and runs on the pool when [`Exec::Parallel`] is
//! selected.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Mode, Scalar};
use crate::exec::Exec;
use crate::oracle::{brute_quantity, Quantity};
use crate::record::ValueRecord;
use crate::weights::WeightSystem;

/// `b_1..b_pmax` (index `p - 1` holds `b_p`).
pub fn dp_b<W: WeightSystem>(ws: &W, pmax: usize, exec: Exec) -> Result<Vec<W::Scalar>> {
    check_pmax(pmax)?;
    let mut b: Vec<W::Scalar> = Vec::with_capacity(pmax);
    for p in 1..=pmax {
        let single = ws.f1(p)?;
        let inner = exec.try_sum(1..p, |q| Ok(ws.f2(q, p)? * &b[q - 1]))?;
        b.push(single + &inner);
    }
    Ok(b)
}

/// `d_1..d_pmax` given `b_1..b_pmax` from the same weight system.
pub fn dp_d<W: WeightSystem>(
    ws: &W,
    pmax: usize,
    b: &[W::Scalar],
    exec: Exec,
) -> Result<Vec<W::Scalar>> {
    check_pmax(pmax)?;
    if b.len() < pmax {
        return Err(Error::Invalid(format!("need b_1..b_{pmax}, got {} terms", b.len())));
    }
    let mut d: Vec<W::Scalar> = Vec::with_capacity(pmax);
    for p in 1..=pmax {
        let single = ws.f1(p)? * &ws.g1(p)?;
        let inner = exec.try_sum(1..p, |q| {
            let lifted = d[q - 1].clone() + &(ws.g2(q, p)? * &b[q - 1]);
            Ok(ws.f2(q, p)? * &lifted)
        })?;
        d.push(single + &inner);
    }
    Ok(d)
}

/// `out_p = sum_{p' < p} seq_{p'}`; in particular `out_1 = 0`.
pub fn dp_prefix<S: Scalar>(seq: &[S]) -> Vec<S> {
    let mut out = Vec::with_capacity(seq.len());
    let mut acc = S::zero();
    for s in seq {
        out.push(acc.clone());
        acc = acc + s;
    }
    out
}

fn check_pmax(pmax: usize) -> Result<()> {
    if pmax == 0 {
        return Err(Error::Invalid("pmax must be at least 1".into()));
    }
    Ok(())
}

/// All four sequences for `p = 1..=pmax`, in one mode.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SumTable<S> {
    pub mode: Mode,
    pub pmax: usize,
    pub b: Vec<S>,
    pub d: Vec<S>,
    pub a: Vec<S>,
    pub c: Vec<S>,
}

impl<S: Scalar> SumTable<S> {
    /// Computes `b` and `d` in a single pass, evaluating each `f2(p', p)`
    /// and `g2(p', p)` once.
    pub fn compute<W: WeightSystem<Scalar = S>>(ws: &W, pmax: usize, exec: Exec) -> Result<Self> {
        check_pmax(pmax)?;
        let mut b: Vec<S> = Vec::with_capacity(pmax);
        let mut d: Vec<S> = Vec::with_capacity(pmax);
        for p in 1..=pmax {
            let f1 = ws.f1(p)?;
            let g1 = ws.g1(p)?;
            let terms = exec.try_map(1..p, |q| {
                let f = ws.f2(q, p)?;
                let g = ws.g2(q, p)?;
                let bt = f.clone() * &b[q - 1];
                let dt = f * &(d[q - 1].clone() + &(g * &b[q - 1]));
                Ok((bt, dt))
            })?;
            let bsum = exec.try_sum(0..terms.len(), |k| Ok(terms[k].0.clone()))?;
            let dsum = exec.try_sum(0..terms.len(), |k| Ok(terms[k].1.clone()))?;
            d.push(f1.clone() * &g1 + &dsum);
            b.push(f1 + &bsum);
        }
        Ok(Self::from_parts(ws.mode(), b, d))
    }

    pub fn from_parts(mode: Mode, b: Vec<S>, d: Vec<S>) -> Self {
        assert_eq!(b.len(), d.len());
        let a = dp_prefix(&b);
        let c = dp_prefix(&d);
        SumTable { mode, pmax: b.len(), b, d, a, c }
    }

    pub fn sequence(&self, which: Quantity) -> &[S] {
        match which {
            Quantity::A => &self.a,
            Quantity::B => &self.b,
            Quantity::C => &self.c,
            Quantity::D => &self.d,
        }
    }

    /// The value at `p` (1-based).
    pub fn get(&self, which: Quantity, p: usize) -> Option<&S> {
        p.checked_sub(1).and_then(|i| self.sequence(which).get(i))
    }

    /// One serializable record per `p`, in order.
    pub fn records(&self, which: Quantity) -> Vec<ValueRecord> {
        self.sequence(which)
            .iter()
            .enumerate()
            .map(|(i, v)| ValueRecord::new(i + 1, which, &self.mode, v))
            .collect()
    }
}

/// One oracle-versus-table comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Agreement {
    pub p: usize,
    pub quantity: Quantity,
    pub oracle: serde_json::Value,
    pub dp: serde_json::Value,
    pub agree: bool,
}

/// Compares the quadratic table built from `engine` with brute-force
/// enumeration over `reference` for every `p <= pmax` and all four
/// quantities, in `(p, quantity)` order. Normally both are the same system.
pub fn crosscheck<R, W>(
    reference: &R,
    engine: &W,
    pmax: usize,
    limit: usize,
    exec: Exec,
) -> Result<Vec<Agreement>>
where
    R: WeightSystem,
    W: WeightSystem<Scalar = R::Scalar>,
{
    let table = SumTable::compute(engine, pmax, exec)?;
    let mut out = Vec::with_capacity(4 * pmax);
    for p in 1..=pmax {
        for which in Quantity::ALL {
            let brute = brute_quantity(reference, p, which, limit, exec)?;
            let fast = &table.sequence(which)[p - 1];
            out.push(Agreement {
                p,
                quantity: which,
                oracle: brute.to_json(),
                dp: fast.to_json(),
                agree: &brute == fast,
            });
        }
    }
    Ok(out)
}

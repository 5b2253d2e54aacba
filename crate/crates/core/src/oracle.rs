//! Brute-force evaluation by enumerating every chain.
//!
//! This is the reference the quadratic engine in [`crate::dp`] is checked
//! against, so it does nothing clever: each chain's weight and value are
//! built from the recursive definitions and the results are added up.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::exec::Exec;
use crate::weights::{Memoized, WeightSystem};

/// Default largest `p` the oracle will enumerate (`2^(p-1)` chains).
pub const DEFAULT_LIMIT: usize = 18;

/// A strictly increasing list of positive integers `j_1 < ... < j_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain(Vec<usize>);

impl Chain {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let increasing = entries.windows(2).all(|w| w[0] < w[1]);
        if entries.is_empty() || entries[0] == 0 || !increasing {
            return Err(Error::BadChain(entries));
        }
        Ok(Chain(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max(&self) -> usize {
        *self.0.last().expect("nonempty")
    }

    /// The chain with its maximum removed, if anything is left.
    pub fn parent(&self) -> Option<Chain> {
        (self.0.len() > 1).then(|| Chain(self.0[..self.0.len() - 1].to_vec()))
    }

    /// Builds the chain whose members below `top` are the set bits of `mask`
    /// (bit `k` standing for `k + 1`), followed by `top` itself if given.
    fn from_mask(mask: u64, top: Option<usize>) -> Chain {
        let mut v: Vec<usize> = (0..64).filter(|k| mask >> k & 1 == 1).map(|k| k + 1).collect();
        v.extend(top);
        Chain(v)
    }
}

/// The chains with maximum exactly `p`, in subset-rank order.
pub fn chains_with_max(p: usize) -> impl Iterator<Item = Chain> {
    assert!((1..=64).contains(&p));
    (0..1u64 << (p - 1)).map(move |m| Chain::from_mask(m, Some(p)))
}

/// The nonempty chains inside `{1, ..., p-1}`, in subset-rank order.
pub fn chains_below(p: usize) -> impl Iterator<Item = Chain> {
    assert!((1..=64).contains(&p));
    (1..1u64 << (p - 1)).map(|m| Chain::from_mask(m, None))
}

/// `W([j_1]) = f1(j_1)`, `W([.., j_{q-1}, j_q]) = W([.., j_{q-1}]) * f2(j_{q-1}, j_q)`.
pub fn chain_weight<W: WeightSystem>(ws: &W, chain: &Chain) -> Result<W::Scalar> {
    let js = chain.entries();
    let mut w = ws.f1(js[0])?;
    for pair in js.windows(2) {
        w = w * &ws.f2(pair[0], pair[1])?;
    }
    Ok(w)
}

/// `V([j_1]) = g1(j_1)`, `V([.., j_{q-1}, j_q]) = V([.., j_{q-1}]) + g2(j_{q-1}, j_q)`.
pub fn chain_value<W: WeightSystem>(ws: &W, chain: &Chain) -> Result<W::Scalar> {
    let js = chain.entries();
    let mut v = ws.g1(js[0])?;
    for pair in js.windows(2) {
        v = v + &ws.g2(pair[0], pair[1])?;
    }
    Ok(v)
}

/// The four lattice sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quantity {
    /// `sum W` over nonempty chains inside `{1..p-1}`.
    A,
    /// `sum W` over chains with maximum `p`.
    B,
    /// `sum W*V` over nonempty chains inside `{1..p-1}`.
    C,
    /// `sum W*V` over chains with maximum `p`.
    D,
}

impl Quantity {
    pub const ALL: [Quantity; 4] = [Quantity::A, Quantity::B, Quantity::C, Quantity::D];

    fn with_value(self) -> bool {
        matches!(self, Quantity::C | Quantity::D)
    }

    fn max_fixed(self) -> bool {
        matches!(self, Quantity::B | Quantity::D)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::A => "A",
            Quantity::B => "B",
            Quantity::C => "C",
            Quantity::D => "D",
        })
    }
}

impl FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Quantity::A),
            "B" | "b" => Ok(Quantity::B),
            "C" | "c" => Ok(Quantity::C),
            "D" | "d" => Ok(Quantity::D),
            _ => Err(Error::Parse(format!("unknown quantity {s:?}, expected A, B, C or D"))),
        }
    }
}

// Enumeration is split into this many contiguous rank ranges.
const CHUNKS: u64 = 64;

/// Evaluates `which` at `p` by enumerating all `2^(p-1)` relevant subsets.
///
/// Refuses when `p > limit`. `A_1` and `C_1` are empty sums and equal zero.
pub fn brute_quantity<W: WeightSystem>(
    ws: &W,
    p: usize,
    which: Quantity,
    limit: usize,
    exec: Exec,
) -> Result<W::Scalar> {
    if p == 0 {
        return Err(Error::Invalid("p must be at least 1".into()));
    }
    if p > limit || p > 64 {
        return Err(Error::EnumerationLimit { p, limit, chains: 1u128 << (p - 1) });
    }
    let ws = Memoized::new(ws);
    let top = which.max_fixed().then_some(p);
    let total = 1u64 << (p - 1);
    let first = if top.is_some() { 0 } else { 1 };
    let step = total.div_ceil(CHUNKS).max(1);
    let nchunks = total.div_ceil(step) as usize;
    exec.try_sum(0..nchunks, |k| {
        let lo = (k as u64 * step).max(first);
        let hi = ((k as u64 + 1) * step).min(total);
        let mut acc = W::Scalar::zero();
        for mask in lo..hi {
            let chain = Chain::from_mask(mask, top);
            let mut term = chain_weight(&ws, &chain)?;
            if which.with_value() {
                term = term * &chain_value(&ws, &chain)?;
            }
            acc = acc + &term;
        }
        Ok(acc)
    })
}

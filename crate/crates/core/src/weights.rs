//! Markovian weight systems.
//!
//! A weight system supplies four maps on positive integers:
//!
//! * `f1(j)`: weight of the singleton chain `[j]`,
//! * `f2(i, j)`: multiplier applied when `j` is appended after `i`,
//! * `g1(j)`: value of the singleton chain `[j]`,
//! * `g2(i, j)`: increment applied when `j` is appended after `i`.
//!
//! The pair maps are only defined for `1 <= i < j`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::exact::{BigRat, Mode, RatFunc, Scalar};
use crate::oracle::Chain;

pub trait WeightSystem: Sync {
    type Scalar: Scalar;

    fn name(&self) -> &str;
    fn mode(&self) -> Mode;
    fn f1(&self, j: usize) -> Result<Self::Scalar>;
    fn f2(&self, i: usize, j: usize) -> Result<Self::Scalar>;
    fn g1(&self, j: usize) -> Result<Self::Scalar>;
    fn g2(&self, i: usize, j: usize) -> Result<Self::Scalar>;
}

impl<W: WeightSystem + ?Sized> WeightSystem for &W {
    type Scalar = W::Scalar;
    fn name(&self) -> &str {
        (**self).name()
    }
    fn mode(&self) -> Mode {
        (**self).mode()
    }
    fn f1(&self, j: usize) -> Result<Self::Scalar> {
        (**self).f1(j)
    }
    fn f2(&self, i: usize, j: usize) -> Result<Self::Scalar> {
        (**self).f2(i, j)
    }
    fn g1(&self, j: usize) -> Result<Self::Scalar> {
        (**self).g1(j)
    }
    fn g2(&self, i: usize, j: usize) -> Result<Self::Scalar> {
        (**self).g2(i, j)
    }
}

pub(crate) fn check_index(func: &'static str, j: usize) -> Result<()> {
    if j == 0 {
        return Err(Error::BadIndex { func, j });
    }
    Ok(())
}

pub(crate) fn check_pair(func: &'static str, i: usize, j: usize) -> Result<()> {
    if i == 0 || i >= j {
        return Err(Error::BadPair { func, i, j });
    }
    Ok(())
}

/// Which algebraic form of the BCMV weights to evaluate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Form {
    /// As originally displayed, with the removable factor `(x - X)` still
    /// present in numerator and denominator.
    Raw,
    /// With the removable factor cancelled, so `x = j` is no longer a pole
    /// of `f1(j)` and `f2(., j)`.
    #[default]
    Reduced,
}

/// The weight system behind the BCMV sums.
///
/// `f1`/`f2` telescope the product weight `N(x; j_1..j_q)` and `g1`/`g2`
/// telescope the additive value `G(x; j_1..j_q)`.
#[derive(Clone, Debug)]
pub struct Bcmv<S> {
    x: S,
    mode: Mode,
    form: Form,
}

impl Bcmv<RatFunc> {
    pub fn symbolic(form: Form) -> Self {
        Bcmv { x: RatFunc::x(), mode: Mode::Symbolic, form }
    }
}

impl Bcmv<BigRat> {
    pub fn fixed(x0: BigRat, form: Form) -> Self {
        Bcmv { x: x0.clone(), mode: Mode::Fixed(x0), form }
    }
}

fn int<S: Scalar>(n: i64) -> S {
    S::from_int(n)
}

fn rat<S: Scalar>(n: i64, d: i64) -> S {
    S::from_rat(&BigRat::ratio(n, d).expect("nonzero denominator"))
}

impl<S: Scalar> Bcmv<S> {
    pub fn form(&self) -> Form {
        self.form
    }

    pub fn x(&self) -> &S {
        &self.x
    }

    fn div(&self, num: S, den: &S, what: impl FnOnce() -> String) -> Result<S> {
        num.checked_div(den).map_err(|e| match e {
            Error::DivisionByZero => Error::Pole {
                at: match &self.mode {
                    Mode::Fixed(x0) => x0.to_string(),
                    Mode::Symbolic => "x".to_string(),
                },
                denominator: what(),
            },
            other => other,
        })
    }

    fn x2(&self) -> S {
        self.x.clone() * &self.x
    }

    // x^3 - x
    fn x3_minus_x(&self) -> S {
        self.x2() * &self.x - &self.x
    }

    // x^2 + x*Y + Y^2 - 1
    fn quad(&self, y: i64) -> S {
        self.x2() + &(self.x.clone() * &int(y)) + &int(y * y - 1)
    }

    // (x^3 - x)(x + Y) / (5Y^2 + 5xY + 5x^2 - 5)
    fn cubic_ratio(&self, y: i64, func: &str) -> Result<S> {
        let num = self.x3_minus_x() * &(self.x.clone() + &int(y));
        let den = self.quad(y) * &int(5);
        self.div(num, &den, || format!("5*{y}^2 + 5*x*{y} + 5*x^2 - 5 in {func}"))
    }

    /// `N(x; j_1..j_q)` computed directly from the closed product:
    ///
    /// `(-12)^q j_1...j_q * j_1 (j_2-j_1)...(j_q-j_{q-1}) (x-j_q)
    ///   / prod_k (x^3 - x + j_k - j_k^3)`.
    pub fn product_weight(&self, chain: &Chain) -> Result<S> {
        let js = chain.entries();
        let mut num = int::<S>(1);
        let mut den = int::<S>(1);
        let mut prev = 0i64;
        for &j in js {
            let j = j as i64;
            num = num * &int(-12 * j * (j - prev));
            den = den * &(self.x3_minus_x() + &int(j - j * j * j));
            prev = j;
        }
        num = num * &(self.x.clone() - &int(prev));
        self.div(num, &den, || format!("prod (x^3 - x + j - j^3) over {js:?} in N"))
    }

    /// `G(x; j_1..j_q)` computed directly from its defining sum.
    pub fn direct_value(&self, chain: &Chain) -> Result<S> {
        let js: Vec<i64> = chain.entries().iter().map(|&j| j as i64).collect();
        let q = js.len() as i64;
        let j1 = js[0];
        let x3x = self.x3_minus_x();
        let mut acc = rat::<S>(-28, 9) * &self.x2() + &(rat::<S>(49, 45) * &int(q));
        acc = acc + &rat(32 * j1 * j1, 9) - &rat(4, 9);
        acc = acc - &self.div(rat::<S>(4, 9) * &x3x, &int(j1), || "j_1 in G".into())?;
        let mut recips = int::<S>(0);
        let mut squares = 0i64;
        let mut fractions = int::<S>(0);
        for &j in &js {
            recips = recips + &rat(1, j);
            squares += j * j;
            let den = self.quad(j);
            let term = self.div(self.x.clone() + &int(j), &den, || {
                format!("x^2 + {j}^2 + x*{j} - 1 in G")
            })?;
            fractions = fractions + &term;
        }
        acc = acc + &(rat::<S>(5, 18) * &x3x * &recips);
        acc = acc + &rat(38 * squares, 15);
        acc = acc + &(x3x * &rat(1, 5) * &fractions);
        let consecutive: i64 = js.windows(2).map(|w| w[0] * w[1]).sum();
        let cross = int::<S>(consecutive) + &(self.x.clone() * &int(js[js.len() - 1]));
        Ok(acc - &(rat::<S>(13, 9) * &cross))
    }
}

impl<S: Scalar> WeightSystem for Bcmv<S> {
    type Scalar = S;

    fn name(&self) -> &str {
        "bcmv"
    }

    fn mode(&self) -> Mode {
        self.mode.clone()
    }

    fn f1(&self, j: usize) -> Result<S> {
        check_index("f1", j)?;
        let xj = j as i64;
        match self.form {
            Form::Raw => {
                let num = int::<S>(-12 * xj * xj) * &(self.x.clone() - &int(xj));
                let den = self.x3_minus_x() + &int(xj - xj * xj * xj);
                self.div(num, &den, || format!("x^3 - {xj}^3 + {xj} - x in f1({j})"))
            }
            Form::Reduced => {
                let den = self.quad(xj);
                self.div(int(-12 * xj * xj), &den, || {
                    format!("x^2 + {xj}*x + {xj}^2 - 1 in f1({j})")
                })
            }
        }
    }

    fn f2(&self, i: usize, j: usize) -> Result<S> {
        check_pair("f2", i, j)?;
        let (xi, xj) = (i as i64, j as i64);
        let x_minus_i = self.x.clone() - &int(xi);
        match self.form {
            Form::Raw => {
                let num = int::<S>(-12 * xj * (xj - xi)) * &(self.x.clone() - &int(xj));
                let den = x_minus_i * &(self.x3_minus_x() + &int(xj - xj * xj * xj));
                self.div(num, &den, || {
                    format!("(x - {xi})(x^3 - {xj}^3 + {xj} - x) in f2({i}, {j})")
                })
            }
            Form::Reduced => {
                let den = x_minus_i * &self.quad(xj);
                self.div(int(-12 * xj * (xj - xi)), &den, || {
                    format!("(x - {xi})(x^2 + {xj}*x + {xj}^2 - 1) in f2({i}, {j})")
                })
            }
        }
    }

    fn g1(&self, j: usize) -> Result<S> {
        check_index("g1", j)?;
        let xj = j as i64;
        let mut acc = rat::<S>(-28, 9) * &self.x2() + &rat(29, 45) + &rat(274 * xj * xj, 45);
        acc = acc - &(self.x3_minus_x() * &rat(1, 6 * xj));
        acc = acc + &self.cubic_ratio(xj, "g1")?;
        Ok(acc - &(self.x.clone() * &rat(13 * xj, 9)))
    }

    fn g2(&self, i: usize, j: usize) -> Result<S> {
        check_pair("g2", i, j)?;
        let (xi, xj) = (i as i64, j as i64);
        let mut acc = self.x3_minus_x() * &rat(5, 18 * xj);
        acc = acc + &rat(38 * xj * xj, 15);
        acc = acc + &self.cubic_ratio(xj, "g2")?;
        acc = acc - &rat(13 * xi * xj, 9);
        acc = acc - &(self.x.clone() * &rat(13 * (xj - xi), 9));
        Ok(acc + &rat(49, 45))
    }
}

type Unary<S> = Box<dyn Fn(usize) -> Result<S> + Send + Sync>;
type Binary<S> = Box<dyn Fn(usize, usize) -> Result<S> + Send + Sync>;

/// A weight system assembled from closures. Argument checks are applied
/// before the closures run.
pub struct MarkovWeights<S> {
    name: String,
    mode: Mode,
    f1: Unary<S>,
    f2: Binary<S>,
    g1: Unary<S>,
    g2: Binary<S>,
}

impl<S: Scalar> MarkovWeights<S> {
    pub fn new(
        name: impl Into<String>,
        mode: Mode,
        f1: impl Fn(usize) -> Result<S> + Send + Sync + 'static,
        f2: impl Fn(usize, usize) -> Result<S> + Send + Sync + 'static,
        g1: impl Fn(usize) -> Result<S> + Send + Sync + 'static,
        g2: impl Fn(usize, usize) -> Result<S> + Send + Sync + 'static,
    ) -> Self {
        MarkovWeights {
            name: name.into(),
            mode,
            f1: Box::new(f1),
            f2: Box::new(f2),
            g1: Box::new(g1),
            g2: Box::new(g2),
        }
    }
}

impl<S: Scalar> WeightSystem for MarkovWeights<S> {
    type Scalar = S;
    fn name(&self) -> &str {
        &self.name
    }
    fn mode(&self) -> Mode {
        self.mode.clone()
    }
    fn f1(&self, j: usize) -> Result<S> {
        check_index("f1", j)?;
        (self.f1)(j)
    }
    fn f2(&self, i: usize, j: usize) -> Result<S> {
        check_pair("f2", i, j)?;
        (self.f2)(i, j)
    }
    fn g1(&self, j: usize) -> Result<S> {
        check_index("g1", j)?;
        (self.g1)(j)
    }
    fn g2(&self, i: usize, j: usize) -> Result<S> {
        check_pair("g2", i, j)?;
        (self.g2)(i, j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Slot {
    F1,
    F2,
    G1,
    G2,
}

type Cache<S> = HashMap<(Slot, usize, usize), Result<S>>;

/// Caches every evaluation of the wrapped system. Results, errors included,
/// are exactly those of the inner system.
pub struct Memoized<W: WeightSystem> {
    inner: W,
    cache: Mutex<Cache<W::Scalar>>,
}

impl<W: WeightSystem> Memoized<W> {
    pub fn new(inner: W) -> Self {
        Memoized { inner, cache: Mutex::new(HashMap::new()) }
    }

    pub fn inner(&self) -> &W {
        &self.inner
    }

    fn get(
        &self,
        key: (Slot, usize, usize),
        eval: impl FnOnce() -> Result<W::Scalar>,
    ) -> Result<W::Scalar> {
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return v.clone();
        }
        // Evaluate outside the lock; a racing duplicate computes the same value.
        let v = eval();
        self.cache.lock().expect("cache lock").insert(key, v.clone());
        v
    }
}

impl<W: WeightSystem> WeightSystem for Memoized<W> {
    type Scalar = W::Scalar;
    fn name(&self) -> &str {
        self.inner.name()
    }
    fn mode(&self) -> Mode {
        self.inner.mode()
    }
    fn f1(&self, j: usize) -> Result<Self::Scalar> {
        self.get((Slot::F1, j, 0), || self.inner.f1(j))
    }
    fn f2(&self, i: usize, j: usize) -> Result<Self::Scalar> {
        self.get((Slot::F2, i, j), || self.inner.f2(i, j))
    }
    fn g1(&self, j: usize) -> Result<Self::Scalar> {
        self.get((Slot::G1, j, 0), || self.inner.g1(j))
    }
    fn g2(&self, i: usize, j: usize) -> Result<Self::Scalar> {
        self.get((Slot::G2, i, j), || self.inner.g2(i, j))
    }
}

/// Number of calls made to each map of a [`Counting`] system.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CallCounts {
    pub f1: usize,
    pub f2: usize,
    pub g1: usize,
    pub g2: usize,
}

/// Counts calls to the wrapped system without caching anything.
pub struct Counting<W> {
    inner: W,
    counts: [AtomicUsize; 4],
}

impl<W: WeightSystem> Counting<W> {
    pub fn new(inner: W) -> Self {
        Counting { inner, counts: Default::default() }
    }

    pub fn counts(&self) -> CallCounts {
        let c = |k: usize| self.counts[k].load(Ordering::Relaxed);
        CallCounts { f1: c(0), f2: c(1), g1: c(2), g2: c(3) }
    }

    fn hit(&self, k: usize) {
        self.counts[k].fetch_add(1, Ordering::Relaxed);
    }
}

impl<W: WeightSystem> WeightSystem for Counting<W> {
    type Scalar = W::Scalar;
    fn name(&self) -> &str {
        self.inner.name()
    }
    fn mode(&self) -> Mode {
        self.inner.mode()
    }
    fn f1(&self, j: usize) -> Result<Self::Scalar> {
        self.hit(0);
        self.inner.f1(j)
    }
    fn f2(&self, i: usize, j: usize) -> Result<Self::Scalar> {
        self.hit(1);
        self.inner.f2(i, j)
    }
    fn g1(&self, j: usize) -> Result<Self::Scalar> {
        self.hit(2);
        self.inner.g1(j)
    }
    fn g2(&self, i: usize, j: usize) -> Result<Self::Scalar> {
        self.hit(3);
        self.inner.g2(i, j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Poly;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn rf(num: Poly, den: Poly) -> RatFunc {
        RatFunc::new(num, den).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRat {
        BigRat::ratio(n, d).unwrap()
    }

    fn chain(js: &[usize]) -> Chain {
        Chain::new(js.to_vec()).unwrap()
    }

    #[test]
    fn f1_values() {
        let raw = Bcmv::symbolic(Form::Raw);
        let red = Bcmv::symbolic(Form::Reduced);
        assert_eq!(raw.f1(1).unwrap(), rf(p(&[-12]), p(&[0, 1, 1])));
        assert_eq!(red.f1(2).unwrap(), rf(p(&[-48]), p(&[3, 2, 1])));
        assert_eq!(Bcmv::fixed(q(2, 1), Form::Reduced).f1(1).unwrap(), q(-2, 1));
    }

    #[test]
    fn f2_values() {
        let red = Bcmv::symbolic(Form::Reduced);
        assert_eq!(red.f2(1, 2).unwrap(), rf(p(&[-24]), &p(&[-1, 1]) * &p(&[3, 2, 1])));
        assert_eq!(red.f2(1, 3).unwrap(), rf(p(&[-72]), &p(&[-1, 1]) * &p(&[8, 3, 1])));
        assert_eq!(red.f2(2, 2), Err(Error::BadPair { func: "f2", i: 2, j: 2 }));
        assert!(red.f2(0, 2).is_err());
    }

    #[test]
    fn raw_form_hits_removable_pole() {
        let raw = Bcmv::fixed(q(3, 1), Form::Raw);
        assert!(matches!(raw.f1(3), Err(Error::Pole { .. })));
        assert!(matches!(raw.f2(1, 3), Err(Error::Pole { .. })));
        let red = Bcmv::fixed(q(3, 1), Form::Reduced);
        assert_eq!(red.f1(3).unwrap(), q(-108, 26));
        // x - X still vanishes for X = x0
        let err = red.f2(3, 4).unwrap_err();
        assert!(matches!(err, Error::Pole { ref at, .. } if at == "3"), "{err}");
    }

    #[test]
    fn g1_values() {
        let sym = Bcmv::symbolic(Form::Reduced).g1(1).unwrap();
        // -28x^2/9 + 303/45 - (x^3-x)/6 + (x^2-1)/5 - 13x/9
        let expected = Poly::from_coeffs(vec![
            q(303, 45) - q(1, 5),
            q(1, 6) - q(13, 9),
            q(-28, 9) + q(1, 5),
            q(-1, 6),
        ]);
        assert_eq!(sym, RatFunc::from_poly(expected));
        assert_eq!(Bcmv::fixed(q(2, 1), Form::Reduced).g1(1).unwrap(), q(-9, 1));
    }

    #[test]
    fn g1_quadratic_coefficient_in_j() {
        let w = Bcmv::fixed(q(0, 1), Form::Reduced);
        // at x = 0: g1(j) = 29/45 + 274 j^2/45 (j = 1 is a pole there)
        for j in 2..6 {
            assert_eq!(w.g1(j).unwrap(), q(29, 45) + q(274 * (j * j) as i64, 45));
        }
    }

    #[test]
    fn g2_values() {
        let w = Bcmv::fixed(q(3, 1), Form::Reduced);
        assert_eq!(w.g2(1, 2).unwrap(), q(26, 3));
        assert!(w.g2(3, 2).is_err());
        // constant term at x = 0 for the pair (1, 2): 38*4/15 - 26/9 + 49/45
        let w0 = Bcmv::fixed(q(0, 1), Form::Reduced);
        assert_eq!(w0.g2(1, 2).unwrap(), q(152, 15) - q(26, 9) + q(49, 45));
    }

    #[test]
    fn direct_weight_and_value() {
        let sym = Bcmv::symbolic(Form::Reduced);
        assert_eq!(sym.product_weight(&chain(&[1])).unwrap(), rf(p(&[-12]), p(&[0, 1, 1])));
        let den = &(&(&p(&[0, 1]) * &p(&[1, 1])) * &p(&[-1, 1])) * &p(&[3, 2, 1]);
        assert_eq!(sym.product_weight(&chain(&[1, 2])).unwrap(), rf(p(&[288]), den));
        let fixed = Bcmv::fixed(q(2, 1), Form::Reduced);
        assert_eq!(fixed.product_weight(&chain(&[1])).unwrap(), q(-2, 1));
        assert_eq!(fixed.direct_value(&chain(&[1])).unwrap(), q(-9, 1));
        let telescoped = sym.g1(1).unwrap() + &sym.g2(1, 2).unwrap();
        assert_eq!(sym.direct_value(&chain(&[1, 2])).unwrap(), telescoped);
    }

    #[test]
    fn value_depends_on_length_with_coefficient_49_45() {
        // At x = 0 every x-dependent term vanishes.
        let w = Bcmv::fixed(q(0, 1), Form::Reduced);
        let short = w.direct_value(&chain(&[2, 4])).unwrap();
        let long = w.direct_value(&chain(&[2, 3, 4])).unwrap();
        // inserting 3: 49/45 + 38*9/15 - 13/9*(2*3 + 3*4 - 2*4)
        let delta = q(49, 45) + q(342, 15) - q(130, 9);
        assert_eq!(long - &short, delta);
    }

    #[test]
    fn memoized_and_counting() {
        let counting = Counting::new(Bcmv::symbolic(Form::Reduced));
        let memo = Memoized::new(&counting);
        for _ in 0..3 {
            memo.f2(1, 3).unwrap();
            assert!(memo.f2(3, 1).is_err());
        }
        assert_eq!(counting.counts().f2, 2);
        assert_eq!(memo.f2(1, 3), Bcmv::symbolic(Form::Reduced).f2(1, 3));
    }

    #[test]
    fn custom_system_checks_arguments() {
        let w = MarkovWeights::new(
            "ones",
            Mode::Fixed(q(0, 1)),
            |_| Ok(BigRat::one()),
            |_, _| Ok(BigRat::one()),
            |_| Ok(BigRat::zero()),
            |_, _| Ok(BigRat::one()),
        );
        assert_eq!(w.name(), "ones");
        assert!(w.f1(0).is_err());
        assert!(w.g2(2, 1).is_err());
        assert_eq!(w.f2(1, 2).unwrap(), BigRat::one());
    }
}

//! Exact evaluation of the threshold constants behind the starriness lemmas.
//!
//! Values are kept as exact integers while they stay below `2^EXACT_BITS`.
//! Anything at least that large becomes a [`Bound::Symbolic`] expression tree,
//! so a symbolic value always exceeds every exact one.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Exact values stay below `2^EXACT_BITS`.
pub const EXACT_BITS: u64 = 1 << 16;

/// Decimal output is used up to this many digits.
pub const DECIMAL_DIGITS: usize = 10_000;

const EXPR_DEPTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigUint),
    Add(Rc<Expr>, Rc<Expr>),
    Sub(Rc<Expr>, Rc<Expr>),
    Mul(Rc<Expr>, Rc<Expr>),
    Max(Rc<Expr>, Rc<Expr>),
    Pow2(Rc<Expr>),
    Binom(Rc<Expr>, Rc<Expr>),
    /// `step` applied `count` times starting from `seed`.
    Iterate {
        name: &'static str,
        count: Rc<Expr>,
        seed: Rc<Expr>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    Exact(BigUint),
    /// At least `2^EXACT_BITS`.
    Symbolic(Rc<Expr>),
}

impl From<u64> for Bound {
    fn from(x: u64) -> Self {
        Bound::Exact(BigUint::from(x))
    }
}

impl From<BigUint> for Bound {
    fn from(x: BigUint) -> Self {
        if x.bits() > EXACT_BITS {
            Bound::Symbolic(Rc::new(Expr::Int(x)))
        } else {
            Bound::Exact(x)
        }
    }
}

impl Bound {
    pub fn zero() -> Self {
        Bound::from(0)
    }

    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            Bound::Exact(x) => Some(x),
            Bound::Symbolic(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact().is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.exact().is_some_and(Zero::is_zero)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.exact().and_then(ToPrimitive::to_u64)
    }

    pub fn expr(&self) -> Rc<Expr> {
        match self {
            Bound::Exact(x) => Rc::new(Expr::Int(x.clone())),
            Bound::Symbolic(e) => e.clone(),
        }
    }

    pub fn add(&self, other: &Bound) -> Bound {
        match (self, other) {
            (Bound::Exact(a), Bound::Exact(b)) => Bound::from(a + b),
            _ if self.is_zero() => other.clone(),
            _ if other.is_zero() => self.clone(),
            _ => Bound::Symbolic(Rc::new(Expr::Add(self.expr(), other.expr()))),
        }
    }

    pub fn add_u64(&self, x: u64) -> Bound {
        self.add(&Bound::from(x))
    }

    pub fn mul(&self, other: &Bound) -> Bound {
        if self.is_zero() || other.is_zero() {
            return Bound::zero();
        }
        match (self, other) {
            (Bound::Exact(a), Bound::Exact(b)) if a.bits() + b.bits() <= EXACT_BITS + 1 => Bound::from(a * b),
            _ if self.to_u64() == Some(1) => other.clone(),
            _ if other.to_u64() == Some(1) => self.clone(),
            _ => Bound::Symbolic(Rc::new(Expr::Mul(self.expr(), other.expr()))),
        }
    }

    pub fn mul_u64(&self, x: u64) -> Bound {
        self.mul(&Bound::from(x))
    }

    pub fn max(&self, other: &Bound) -> Bound {
        match (self, other) {
            (Bound::Exact(a), Bound::Exact(b)) => Bound::Exact(a.max(b).clone()),
            (Bound::Symbolic(_), Bound::Exact(_)) => self.clone(),
            (Bound::Exact(_), Bound::Symbolic(_)) => other.clone(),
            (Bound::Symbolic(a), Bound::Symbolic(b)) if a == b => self.clone(),
            (Bound::Symbolic(a), Bound::Symbolic(b)) => Bound::Symbolic(Rc::new(Expr::Max(a.clone(), b.clone()))),
        }
    }

    pub fn pow2(&self) -> Bound {
        match self.to_u64() {
            Some(e) if e < EXACT_BITS => Bound::Exact(BigUint::one() << e),
            _ => Bound::Symbolic(Rc::new(Expr::Pow2(self.expr()))),
        }
    }

    /// Exact subtraction; `None` if it would go negative.
    fn checked_sub_u64(&self, x: u64) -> Option<Bound> {
        match self {
            Bound::Exact(a) => (*a >= BigUint::from(x)).then(|| Bound::Exact(a - x)),
            Bound::Symbolic(e) if x == 0 => Some(Bound::Symbolic(e.clone())),
            Bound::Symbolic(e) => Some(Bound::Symbolic(Rc::new(Expr::Sub(
                e.clone(),
                Rc::new(Expr::Int(x.into())),
            )))),
        }
    }

    /// Decimal digit count of an exact value.
    pub fn digits(&self) -> Option<usize> {
        self.exact()
            .map(|x| if x.is_zero() { 1 } else { x.to_str_radix(10).len() })
    }

    fn compare(&self, other: &Bound) -> Option<std::cmp::Ordering> {
        match (self, other) {
            (Bound::Exact(a), Bound::Exact(b)) => Some(a.cmp(b)),
            (Bound::Symbolic(_), Bound::Exact(_)) => Some(std::cmp::Ordering::Greater),
            (Bound::Exact(_), Bound::Symbolic(_)) => Some(std::cmp::Ordering::Less),
            (Bound::Symbolic(a), Bound::Symbolic(b)) => (a == b).then_some(std::cmp::Ordering::Equal),
        }
    }
}

impl PartialOrd for Bound {
    /// Symbolic values are incomparable with each other unless identical.
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.compare(other)
    }
}

/// `C(n, k)` for `k ≤ n − k`.
fn binom_small_side(n: &Bound, k: &Bound) -> Bound {
    if k.is_zero() {
        return Bound::from(1);
    }
    let (Some(n), Some(k)) = (n.exact(), k.to_u64()) else {
        return Bound::Symbolic(Rc::new(Expr::Binom(n.expr(), k.expr())));
    };
    // log2 C(n, k) ≥ k·log2(n / k)
    let log_n = n.bits() as f64 - 1.0;
    let lower = k as f64 * (log_n - (k as f64).log2()).max(0.0);
    if lower > EXACT_BITS as f64 + 1.0 {
        return Bound::Symbolic(Rc::new(Expr::Binom(
            Rc::new(Expr::Int(n.clone())),
            Rc::new(Expr::Int(k.into())),
        )));
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Bound::from(acc)
}

/// A sufficient order for Ramsey's theorem: every graph on `C(s+t−2, s−1)` vertices
/// has a clique of size `s` or a stable set of size `t`.
pub fn ramsey_bound(s: u64, t: u64) -> Result<Bound> {
    if s == 0 || t == 0 {
        return Err(Error::arg("ramsey_bound needs s, t ≥ 1"));
    }
    Ok(ramsey(&Bound::from(s), &Bound::from(t)))
}

fn ramsey(s: &Bound, t: &Bound) -> Bound {
    let small = match (s.exact(), t.exact()) {
        (Some(a), Some(b)) => Bound::Exact(a.min(b).clone()),
        (Some(_), None) => s.clone(),
        (None, Some(_)) => t.clone(),
        (None, None) => s.max(t),
    };
    let total = s.add(t).checked_sub_u64(2).unwrap_or_else(Bound::zero);
    let small = small.checked_sub_u64(1).unwrap_or_else(Bound::zero);
    binom_small_side(&total, &small)
}

/// Applies `step` `count` times. If the count is too large to unroll, each step is
/// assumed to at least double a positive value, so the result is symbolic.
fn iterate(name: &'static str, count: &Bound, seed: Bound, mut step: impl FnMut(&Bound) -> Bound) -> Bound {
    let Some(n) = count.to_u64().filter(|&n| n <= EXACT_BITS) else {
        return Bound::Symbolic(Rc::new(Expr::Iterate {
            name,
            count: count.expr(),
            seed: seed.expr(),
        }));
    };
    let mut v = seed;
    for i in 0..n {
        if !v.is_exact() {
            return Bound::Symbolic(Rc::new(Expr::Iterate {
                name,
                count: Rc::new(Expr::Int((n - i).into())),
                seed: v.expr(),
            }));
        }
        v = step(&v);
    }
    v
}

// ---------------------------------------------------------------- lemma formulas

/// `(2c + 3τ + 3)·τ`.
pub fn x_split(c: &Bound, tau: &Bound) -> Bound {
    c.mul_u64(2).add(&tau.mul_u64(3)).add_u64(3).mul(tau)
}

/// `x_split(dτ, τ)`.
pub fn equipped_path(d: &Bound, tau: &Bound) -> Bound {
    x_split(&d.mul(tau), tau)
}

/// `max(R(τ+1, d), equipped_path(d, τ))`, with no Ramsey term when `d = 0`.
pub fn stable_equipment(d: &Bound, tau: &Bound) -> Bound {
    let ramsey_term = if d.is_zero() {
        Bound::zero()
    } else {
        ramsey(&tau.add_u64(1), d)
    };
    ramsey_term.max(&equipped_path(d, tau))
}

/// `a · stable_equipment(d, τ)`.
pub fn equipment(a: &Bound, d: &Bound, tau: &Bound) -> Bound {
    a.mul(&stable_equipment(d, tau))
}

/// Returns `(d̂, c₁, c)`.
fn double_equipment_parts(a: &Bound, b: &Bound, d: &Bound, tau: &Bound) -> (Bound, Bound, Bound) {
    let d_hat = d.max(&b.add_u64(1));
    let c1 = equipment(tau, &d_hat, tau);
    let c = equipment(&c1.add(a).add(b), &d_hat, tau);
    (d_hat, c1, c)
}

pub fn double_equipment(a: &Bound, b: &Bound, d: &Bound, tau: &Bound) -> Bound {
    double_equipment_parts(a, b, d, tau).2
}

/// `c₁ = 2τ`, `cᵢ = max(2d·cᵢ₋₁, 2·equipment(cᵢ₋₁, d, τ))`; all of `c₁..c_k`.
fn broom_ball_sequence(k: u64, d: &Bound, tau: &Bound) -> Vec<Bound> {
    let mut seq = vec![tau.mul_u64(2)];
    for _ in 1..k {
        let prev = seq.last().unwrap();
        let next = d.mul_u64(2).mul(prev).max(&equipment(prev, d, tau).mul_u64(2));
        seq.push(next);
    }
    seq
}

pub fn broom_ball(k: u64, d: &Bound, tau: &Bound) -> Result<Bound> {
    if k == 0 {
        return Err(Error::arg("broom-ball needs k ≥ 1"));
    }
    Ok(broom_ball_sequence(k, d, tau).pop().unwrap())
}

/// `((2k + 2d + 3)τ + c + broom_ball(k, d, τ))·τ`.
pub fn tree_split(c: &Bound, tau: &Bound, d: &Bound, k: u64) -> Result<Bound> {
    let c1 = broom_ball(k, d, tau)?;
    let coeff = Bound::from(2 * k + 3).add(&d.mul_u64(2));
    Ok(coeff.mul(tau).add(c).add(&c1).mul(tau))
}

/// Recursion on `(r, s)` for balls around rooted sums of brooms; `ks[j]` is the broom
/// length of the `j+1`-th summand.
pub fn rooted_sum_ball(r: u64, s: u64, d: &Bound, ks: &[u64], tau: &Bound) -> Result<Bound> {
    if r == 0 || s == 0 || ks.len() < s as usize {
        return Err(Error::arg("rooted-sum-ball needs r, s ≥ 1 and s broom lengths"));
    }
    let mut memo = HashMap::new();
    rooted_sum_rec(r, s, d, ks, tau, &mut memo)
}

fn rooted_sum_rec(
    r: u64,
    s: u64,
    d: &Bound,
    ks: &[u64],
    tau: &Bound,
    memo: &mut HashMap<(u64, u64), Bound>,
) -> Result<Bound> {
    if r == 1 {
        return Ok(tau.clone());
    }
    if let Some(v) = memo.get(&(r, s)) {
        return Ok(v.clone());
    }
    let c1 = rooted_sum_rec(r - 1, s, d, ks, tau, memo)?;
    let c2 = if s == 1 {
        Bound::zero()
    } else {
        rooted_sum_rec(r, s - 1, d, ks, tau, memo)?
    };
    let c3 = tree_split(&c2, &c1, d, ks[s as usize - 1])?;
    let v = c1.add(&c3);
    memo.insert((r, s), v.clone());
    Ok(v)
}

/// Returns `(c, n)` together with `m` and `c₀`.
fn free_cathedral_parts(k: u64, d: &Bound, tau: &Bound) -> FreeCathedral {
    let m = d.mul(d).mul_u64(2);
    let n = ramsey(&tau.add_u64(1), &m);
    let c0 = equipment(tau, d, tau);
    let a = m.add_u64(1).mul(tau).add(&c0);
    let c = if k >= 2 {
        double_equipment(&a, &Bound::zero(), d, tau)
    } else {
        let mn = m.mul(&n);
        double_equipment(&a, &mn, &d.add(&mn), tau)
    };
    FreeCathedral { m, n, c0, c }
}

struct FreeCathedral {
    m: Bound,
    n: Bound,
    c0: Bound,
    c: Bound,
}

/// `(c, n)` for free cathedrals of height `d`.
pub fn free_cathedral(k: u64, d: &Bound, tau: &Bound) -> (Bound, Bound) {
    let f = free_cathedral_parts(k, d, tau);
    (f.c, f.n)
}

/// `(c, n)` with `n = d·n₀` and `c = max(2^{n²}·c₀, equipment(τ, d, τ))`.
pub fn cathedral(k: u64, d: &Bound, tau: &Bound) -> (Bound, Bound) {
    let (c0, n0) = free_cathedral(k, d, tau);
    let n = d.mul(&n0);
    let c = n.mul(&n).pow2().mul(&c0).max(&equipment(tau, d, tau));
    (c, n)
}

/// `2·max(c, τ) + dτ + 1`.
pub fn spire(c: &Bound, d: &Bound, tau: &Bound) -> Bound {
    c.max(tau).mul_u64(2).add(&d.mul(tau)).add_u64(1)
}

/// `c_n = c`, `cᵢ = spire(dτ + cᵢ₊₁, d, τ)`; returns `c₀`.
///
/// Once `dτ + cᵢ₊₁ ≥ τ` each step is `x ↦ 2x + 3dτ + 1`, so the remaining
/// `j` steps collapse to `2^j·(x + 3dτ + 1) − (3dτ + 1)`.
pub fn cathedral_build(n: &Bound, c: &Bound, d: &Bound, tau: &Bound) -> Bound {
    let dt = d.mul(tau);
    let mut x = c.clone();
    let mut left = n.clone();
    while !left.is_zero() && dt.add(&x) < *tau {
        x = spire(&dt.add(&x), d, tau);
        left = left.checked_sub_u64(1).expect("left is positive");
    }
    if left.is_zero() {
        return x;
    }
    let a = dt.mul_u64(3).add_u64(1);
    let scaled = left.pow2().mul(&x.add(&a));
    match (&scaled, a.to_u64()) {
        (Bound::Exact(s), _) => Bound::from(s - a.exact().expect("a is exact when the product is")),
        (Bound::Symbolic(_), Some(a)) => scaled.checked_sub_u64(a).expect("symbolic values are large"),
        (Bound::Symbolic(s), None) => Bound::Symbolic(Rc::new(Expr::Sub(s.clone(), a.expr()))),
    }
}

/// The cathedral threshold fed through the cathedral-building recursion.
pub fn cathedral_starry(k: u64, d: &Bound, tau: &Bound) -> Bound {
    let (c, n) = cathedral(k, d, tau);
    cathedral_build(&n, &c, d, tau)
}

/// `tree_split(·, τ, d, d)` applied `d` times to `c`.
pub fn star_split(c: &Bound, d: u64, tau: &Bound) -> Result<Bound> {
    if d == 0 {
        return Err(Error::arg("star-split needs d ≥ 1"));
    }
    let db = Bound::from(d);
    (0..d).try_fold(c.clone(), |x, _| tree_split(&x, tau, &db, d))
}

struct BandStarry {
    c_prime: Bound,
    n0: Bound,
    n: Bound,
    c_n: Bound,
    c: Bound,
}

fn band_starry_parts(d: u64, tau: &Bound) -> Result<BandStarry> {
    if d == 0 {
        return Err(Error::arg("band-starry needs d ≥ 1"));
    }
    let db = Bound::from(d);
    let (c_prime, n0) = free_cathedral(1, &db, tau);
    let n = n0.mul_u64(2 * d + 1);
    let c_n = c_prime.mul(&n.mul(&n).pow2()).max(&db.mul(tau));
    let mut failure = None;
    let c = iterate("band", &n, c_n.clone(), |x| match star_split(x, d, tau) {
        Ok(y) => cathedral_starry(1, &db, &y),
        Err(e) => {
            failure = Some(e);
            x.clone()
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(BandStarry { c_prime, n0, n, c_n, c })
}

pub fn band_starry(d: u64, tau: &Bound) -> Result<Bound> {
    Ok(band_starry_parts(d, tau)?.c)
}

/// Threshold on χ forcing `(k, d)`-starriness when `ω ≤ κ`, by induction on `κ`.
/// Returns `c(0), c(1), …, c(κ)`.
pub fn starry_sequence(k: u64, d: u64, kappa: u64) -> Result<Vec<StarryStep>> {
    if k == 0 || d == 0 {
        return Err(Error::arg("starry needs k, d ≥ 1"));
    }
    let db = Bound::from(d);
    let mut ks = vec![k.max(d); d as usize];
    ks.push(k);
    let mut steps = vec![StarryStep {
        tau1: Bound::zero(),
        tau: Bound::zero(),
        cathedral: Bound::zero(),
        band: Bound::zero(),
        c: Bound::zero(),
    }];
    for _ in 0..kappa {
        let tau1 = steps.last().unwrap().c.clone();
        if !tau1.is_exact() {
            let prev = steps.last().unwrap().c.expr();
            let c = Bound::Symbolic(Rc::new(Expr::Iterate {
                name: "starry",
                count: Rc::new(Expr::Int((kappa + 1 - steps.len() as u64).into())),
                seed: prev,
            }));
            steps.push(StarryStep {
                tau1: tau1.clone(),
                tau: tau1.clone(),
                cathedral: c.clone(),
                band: c.clone(),
                c,
            });
            break;
        }
        let tau = tau1.max(&rooted_sum_ball(k, d + 1, &db, &ks, &tau1)?);
        let cathedral = cathedral_starry(k, &db, &tau);
        let band = band_starry(d, &tau1)?;
        let c = cathedral.max(&band);
        steps.push(StarryStep {
            tau1,
            tau,
            cathedral,
            band,
            c,
        });
    }
    Ok(steps)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarryStep {
    pub tau1: Bound,
    pub tau: Bound,
    pub cathedral: Bound,
    pub band: Bound,
    pub c: Bound,
}

// ---------------------------------------------------------------- lookup by id

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaId {
    XSplit,
    EquippedPath,
    StableEquipment,
    Equipment,
    DoubleEquipment,
    BroomBall,
    TreeSplit,
    RootedSumBall,
    FreeCathedral,
    Cathedral,
    Spire,
    CathedralBuild,
    CathedralStarry,
    StarSplit,
    BandStarry,
    Starry,
}

impl LemmaId {
    pub const ALL: [LemmaId; 16] = [
        LemmaId::XSplit,
        LemmaId::EquippedPath,
        LemmaId::StableEquipment,
        LemmaId::Equipment,
        LemmaId::DoubleEquipment,
        LemmaId::BroomBall,
        LemmaId::TreeSplit,
        LemmaId::RootedSumBall,
        LemmaId::FreeCathedral,
        LemmaId::Cathedral,
        LemmaId::Spire,
        LemmaId::CathedralBuild,
        LemmaId::CathedralStarry,
        LemmaId::StarSplit,
        LemmaId::BandStarry,
        LemmaId::Starry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::XSplit => "x-split",
            LemmaId::EquippedPath => "equipped-path",
            LemmaId::StableEquipment => "stable-equipment",
            LemmaId::Equipment => "equipment",
            LemmaId::DoubleEquipment => "double-equipment",
            LemmaId::BroomBall => "broom-ball",
            LemmaId::TreeSplit => "tree-split",
            LemmaId::RootedSumBall => "rooted-sum-ball",
            LemmaId::FreeCathedral => "free-cathedral",
            LemmaId::Cathedral => "cathedral",
            LemmaId::Spire => "spire",
            LemmaId::CathedralBuild => "cathedral-build",
            LemmaId::CathedralStarry => "cathedral-starry",
            LemmaId::StarSplit => "star-split",
            LemmaId::BandStarry => "band-starry",
            LemmaId::Starry => "starry",
        }
    }

    /// Parameter names the lemma reads. `rooted-sum-ball` also reads `k1..ks`.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            LemmaId::XSplit => &["c", "tau"],
            LemmaId::EquippedPath | LemmaId::StableEquipment => &["d", "tau"],
            LemmaId::Equipment => &["a", "d", "tau"],
            LemmaId::DoubleEquipment => &["a", "b", "d", "tau"],
            LemmaId::BroomBall => &["k", "d", "tau"],
            LemmaId::TreeSplit => &["c", "tau", "d", "k"],
            LemmaId::RootedSumBall => &["r", "s", "d", "tau"],
            LemmaId::FreeCathedral | LemmaId::Cathedral | LemmaId::CathedralStarry => &["k", "d", "tau"],
            LemmaId::Spire | LemmaId::StarSplit => &["c", "d", "tau"],
            LemmaId::CathedralBuild => &["n", "c", "d", "tau"],
            LemmaId::BandStarry => &["d", "tau"],
            LemmaId::Starry => &["k", "d", "kappa"],
        }
    }

    /// The formula as printed alongside the value.
    pub fn formula(self) -> &'static str {
        match self {
            LemmaId::XSplit => "(2c + 3τ + 3)·τ",
            LemmaId::EquippedPath => "x-split(dτ, τ)",
            LemmaId::StableEquipment => "max(R(τ+1, d), equipped-path(d, τ))",
            LemmaId::Equipment => "a · stable-equipment(d, τ)",
            LemmaId::DoubleEquipment => "d̂ = max(d, b+1); c₁ = equipment(τ, d̂, τ); equipment(c₁ + a + b, d̂, τ)",
            LemmaId::BroomBall => "c₁ = 2τ; cᵢ = max(2d·cᵢ₋₁, 2·equipment(cᵢ₋₁, d, τ)); c_k",
            LemmaId::TreeSplit => "((2k + 2d + 3)τ + c + broom-ball(k, d, τ))·τ",
            LemmaId::RootedSumBall => "c(1, s) = τ; c(r, s) = c₁ + tree-split(c₂, c₁, d, k_s), c₁ = c(r−1, s), c₂ = c(r, s−1)",
            LemmaId::FreeCathedral => "m = 2d²; n = R(τ+1, m); c₀ = equipment(τ, d, τ); double-equipment by cases on k",
            LemmaId::Cathedral => "n = d·n₀; max(2^{n²}·c₀, equipment(τ, d, τ))",
            LemmaId::Spire => "2·max(c, τ) + dτ + 1",
            LemmaId::CathedralBuild => "c_n = c; cᵢ = spire(dτ + cᵢ₊₁, d, τ); c₀",
            LemmaId::CathedralStarry => "cathedral-build(n, c, d, τ) with (c, n) = cathedral(k, d, τ)",
            LemmaId::StarSplit => "tree-split(·, τ, d, d) applied d times",
            LemmaId::BandStarry => {
                "n = (2d+1)n₀; c_n = max(c′·2^{n²}, dτ); cᵢ = cathedral-starry(1, d, star-split(cᵢ₊₁, d, τ))"
            }
            LemmaId::Starry => "c(0) = 0; τ = max(τ₁, rooted-sum-ball(k, d+1, …, τ₁)); c = max(cathedral-starry(k, d, τ), band-starry(d, τ₁))",
        }
    }

    /// True when the formula chains other thresholds rather than being written out in full.
    pub fn derived_composition(self) -> bool {
        matches!(
            self,
            LemmaId::RootedSumBall
                | LemmaId::CathedralBuild
                | LemmaId::CathedralStarry
                | LemmaId::StarSplit
                | LemmaId::BandStarry
                | LemmaId::Starry
        )
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::arg(format!("unknown lemma id `{s}`")))
    }
}

/// Named non-negative integer parameters, e.g. `c=0 tau=1`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ThresholdParams(BTreeMap<String, u64>);

impl ThresholdParams {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: u64) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    /// Parses `name=value` pairs.
    pub fn parse<'a>(pairs: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let mut out = Self::new();
        for pair in pairs {
            let (name, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::arg(format!("expected name=value, got `{pair}`")))?;
            let value = value
                .trim()
                .parse()
                .map_err(|_| Error::arg(format!("parameter `{name}` must be a non-negative integer")))?;
            out.0.insert(name.trim().to_string(), value);
        }
        Ok(out)
    }

    pub fn get(&self, name: &str) -> Result<u64> {
        self.0
            .get(name)
            .copied()
            .ok_or_else(|| Error::arg(format!("missing parameter `{name}`")))
    }

    fn bound(&self, name: &str) -> Result<Bound> {
        self.get(name).map(Bound::from)
    }
}

#[derive(Debug, Clone)]
pub struct ThresholdResult {
    pub lemma: LemmaId,
    pub value: Bound,
    /// Named constants computed on the way, in order.
    pub intermediates: Vec<(String, Bound)>,
    pub derived_composition: bool,
}

pub fn lemma_threshold(lemma: LemmaId, p: &ThresholdParams) -> Result<ThresholdResult> {
    let mut inter: Vec<(String, Bound)> = Vec::new();
    let value = match lemma {
        LemmaId::XSplit => x_split(&p.bound("c")?, &p.bound("tau")?),
        LemmaId::EquippedPath => {
            let (d, tau) = (p.bound("d")?, p.bound("tau")?);
            inter.push(("c".into(), d.mul(&tau)));
            equipped_path(&d, &tau)
        }
        LemmaId::StableEquipment => {
            let (d, tau) = (p.bound("d")?, p.bound("tau")?);
            let r = if d.is_zero() {
                Bound::zero()
            } else {
                ramsey(&tau.add_u64(1), &d)
            };
            inter.push(("d′".into(), r));
            inter.push(("equipped-path".into(), equipped_path(&d, &tau)));
            stable_equipment(&d, &tau)
        }
        LemmaId::Equipment => equipment(&p.bound("a")?, &p.bound("d")?, &p.bound("tau")?),
        LemmaId::DoubleEquipment => {
            let (d_hat, c1, c) =
                double_equipment_parts(&p.bound("a")?, &p.bound("b")?, &p.bound("d")?, &p.bound("tau")?);
            inter.push(("d̂".into(), d_hat));
            inter.push(("c₁".into(), c1));
            c
        }
        LemmaId::BroomBall => {
            let k = p.get("k")?;
            broom_ball(k, &p.bound("d")?, &p.bound("tau")?)?;
            let seq = broom_ball_sequence(k, &p.bound("d")?, &p.bound("tau")?);
            for (i, c) in seq.iter().enumerate() {
                inter.push((format!("c{}", i + 1), c.clone()));
            }
            seq.last().unwrap().clone()
        }
        LemmaId::TreeSplit => {
            let (tau, d, k) = (p.bound("tau")?, p.bound("d")?, p.get("k")?);
            inter.push(("c₁".into(), broom_ball(k, &d, &tau)?));
            tree_split(&p.bound("c")?, &tau, &d, k)?
        }
        LemmaId::RootedSumBall => {
            let s = p.get("s")?;
            let ks = (1..=s).map(|j| p.get(&format!("k{j}"))).collect::<Result<Vec<_>>>()?;
            rooted_sum_ball(p.get("r")?, s, &p.bound("d")?, &ks, &p.bound("tau")?)?
        }
        LemmaId::FreeCathedral => {
            let f = free_cathedral_parts(positive(p, "k")?, &Bound::from(positive(p, "d")?), &p.bound("tau")?);
            inter.push(("m".into(), f.m));
            inter.push(("n".into(), f.n));
            inter.push(("c₀".into(), f.c0));
            f.c
        }
        LemmaId::Cathedral => {
            let (k, d, tau) = (positive(p, "k")?, Bound::from(positive(p, "d")?), p.bound("tau")?);
            let (c0, n0) = free_cathedral(k, &d, &tau);
            let (c, n) = cathedral(k, &d, &tau);
            inter.push(("c₀".into(), c0));
            inter.push(("n₀".into(), n0));
            inter.push(("n".into(), n));
            c
        }
        LemmaId::Spire => spire(&p.bound("c")?, &p.bound("d")?, &p.bound("tau")?),
        LemmaId::CathedralBuild => cathedral_build(&p.bound("n")?, &p.bound("c")?, &p.bound("d")?, &p.bound("tau")?),
        LemmaId::CathedralStarry => {
            let (k, d, tau) = (positive(p, "k")?, Bound::from(positive(p, "d")?), p.bound("tau")?);
            let (c, n) = cathedral(k, &d, &tau);
            inter.push(("c".into(), c));
            inter.push(("n".into(), n));
            cathedral_starry(k, &d, &tau)
        }
        LemmaId::StarSplit => star_split(&p.bound("c")?, p.get("d")?, &p.bound("tau")?)?,
        LemmaId::BandStarry => {
            let b = band_starry_parts(positive(p, "d")?, &p.bound("tau")?)?;
            inter.push(("c′".into(), b.c_prime));
            inter.push(("n₀".into(), b.n0));
            inter.push(("n".into(), b.n));
            inter.push(("c_n".into(), b.c_n));
            b.c
        }
        LemmaId::Starry => {
            let steps = starry_sequence(positive(p, "k")?, positive(p, "d")?, p.get("kappa")?)?;
            for (kappa, s) in steps.iter().enumerate().skip(1) {
                inter.push((format!("τ₁(κ={kappa})"), s.tau1.clone()));
                inter.push((format!("τ(κ={kappa})"), s.tau.clone()));
                inter.push((format!("c(κ={kappa})"), s.c.clone()));
            }
            steps.last().unwrap().c.clone()
        }
    };
    Ok(ThresholdResult {
        lemma,
        value,
        intermediates: inter,
        derived_composition: lemma.derived_composition(),
    })
}

fn positive(p: &ThresholdParams, name: &str) -> Result<u64> {
    match p.get(name)? {
        0 => Err(Error::arg(format!("parameter `{name}` must be at least 1"))),
        x => Ok(x),
    }
}

// ---------------------------------------------------------------- printing

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self, 0)
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr, depth: usize) -> fmt::Result {
    if depth >= EXPR_DEPTH {
        return f.write_str("…");
    }
    let sub = |f: &mut fmt::Formatter<'_>, e: &Expr| write_expr(f, e, depth + 1);
    match e {
        Expr::Int(x) => {
            let s = x.to_str_radix(10);
            if s.len() <= 30 {
                f.write_str(&s)
            } else {
                write!(f, "<{}-digit integer>", s.len())
            }
        }
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            let op = match e {
                Expr::Add(..) => " + ",
                Expr::Sub(..) => " − ",
                _ => "·",
            };
            f.write_str("(")?;
            sub(f, a)?;
            f.write_str(op)?;
            sub(f, b)?;
            f.write_str(")")
        }
        Expr::Max(a, b) | Expr::Binom(a, b) => {
            f.write_str(if matches!(e, Expr::Max(..)) { "max(" } else { "C(" })?;
            sub(f, a)?;
            f.write_str(", ")?;
            sub(f, b)?;
            f.write_str(")")
        }
        Expr::Pow2(a) => {
            f.write_str("2^")?;
            sub(f, a)
        }
        Expr::Iterate { name, count, seed } => {
            write!(f, "{name}^[")?;
            sub(f, count)?;
            f.write_str("](")?;
            sub(f, seed)?;
            f.write_str(")")
        }
    }
}

impl fmt::Display for Bound {
    /// Decimal up to [`DECIMAL_DIGITS`] digits; otherwise the digit count with the leading
    /// digits, or for symbolic values a lower bound on the digit count and the expression.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Exact(x) => {
                let s = x.to_str_radix(10);
                if s.len() <= DECIMAL_DIGITS {
                    f.write_str(&s)
                } else {
                    write!(f, "{}-digit integer {}…", s.len(), &s[..20])
                }
            }
            Bound::Symbolic(e) => {
                let digits = (EXACT_BITS as f64 * std::f64::consts::LOG10_2).floor() as u64 + 1;
                write!(f, "at least {digits} digits = {e}")
            }
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl fmt::Display for ThresholdResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} = {}", self.lemma, self.lemma.formula())?;
        for (name, v) in &self.intermediates {
            writeln!(f, "  {name} = {v}")?;
        }
        if self.derived_composition {
            writeln!(f, "  (derived composition)")?;
        }
        write!(f, "  value = {}", self.value)
    }
}

//! Sums of powers, Bernoulli numbers, Faulhaber's closed form, and a registry
//! of the named identities the dissections realize.
//!
//! Everything here is exact. The Bernoulli numbers follow the convention
//! fixed by the recursion `Σ_{i=0}^{m} C(m+1, i)·B_i = m + 1`, which gives
//! `B_1 = +1/2` (most modern references use `−1/2`; the two conventions
//! differ only at index 1).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::exact::{rat, strip_root, QuadExt, Rat};

/// `Σ_{k=1}^{n} k^p` by literal summation.
pub fn sum_powers_bruteforce(p: u32, n: u64) -> BigInt {
    sum_powers_range(p, 1, n)
}

/// `Σ_{k=lo}^{hi} k^p` by literal summation; empty when `lo > hi`.
pub fn sum_powers_range(p: u32, lo: u64, hi: u64) -> BigInt {
    let mut total = BigInt::zero();
    for k in lo.max(1)..=hi {
        total += BigInt::from(k).pow(p);
    }
    total
}

/// Binomial coefficient via the multiplicative formula; every partial
/// product is itself a binomial coefficient, so each division is exact.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 1..=k {
        c = c * BigInt::from(n - k + i) / BigInt::from(i);
    }
    c
}

/// Bernoulli numbers `B_0, …, B_{len-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<Rat>,
}

impl Default for BernoulliTable {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliTable {
    pub fn new() -> Self {
        BernoulliTable { values: Vec::new() }
    }

    /// Table holding `B_0..=B_upto`.
    pub fn upto(upto: usize) -> Self {
        let mut t = Self::new();
        t.extend_to(upto);
        t
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn get(&self, m: usize) -> Option<&Rat> {
        self.values.get(m)
    }

    /// Grow the table until it holds `B_m`.
    pub fn extend_to(&mut self, m: usize) {
        while self.values.len() <= m {
            let k = self.values.len() as u64;
            // B_k = (k + 1 − Σ_{i<k} C(k+1, i)·B_i) / C(k+1, k)
            let mut acc = Rat::from_integer(BigInt::from(k + 1));
            for (i, b) in self.values.iter().enumerate() {
                acc -= Rat::from_integer(binomial(k + 1, i as u64)) * b;
            }
            self.values.push(acc / Rat::from_integer(BigInt::from(k + 1)));
        }
    }

    /// Whether every stored row satisfies the defining recursion.
    pub fn satisfies_recursion(&self) -> bool {
        (0..self.values.len()).all(|m| {
            let lhs: Rat = self.values[..=m]
                .iter()
                .enumerate()
                .map(|(i, b)| Rat::from_integer(binomial(m as u64 + 1, i as u64)) * b)
                .sum();
            lhs == Rat::from_integer(BigInt::from(m as u64 + 1))
        })
    }
}

#[cfg(feature = "std")]
fn memo() -> &'static std::sync::RwLock<BernoulliTable> {
    static TABLE: std::sync::OnceLock<std::sync::RwLock<BernoulliTable>> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| std::sync::RwLock::new(BernoulliTable::new()))
}

/// `B_m` under the `B_1 = +1/2` convention.
#[cfg(feature = "std")]
pub fn bernoulli(m: usize) -> Rat {
    if let Some(b) = memo().read().unwrap_or_else(|e| e.into_inner()).get(m) {
        return b.clone();
    }
    let mut table = memo().write().unwrap_or_else(|e| e.into_inner());
    table.extend_to(m);
    table.values[m].clone()
}

/// `B_m` under the `B_1 = +1/2` convention. Without `std` there is no shared
/// memo; the table is rebuilt per call.
#[cfg(not(feature = "std"))]
pub fn bernoulli(m: usize) -> Rat {
    BernoulliTable::upto(m).values[m].clone()
}

/// `(1/(p+1))·Σ_{j=0}^{p} C(p+1, j)·B_j·n^{p+1−j}`.
pub fn faulhaber(p: u32, n: u64) -> Rat {
    let table = BernoulliTable::upto(p as usize);
    faulhaber_with(&table, p, n)
}

fn faulhaber_with(table: &BernoulliTable, p: u32, n: u64) -> Rat {
    let n = BigInt::from(n);
    let mut total = Rat::zero();
    for j in 0..=p {
        let term = Rat::from_integer(binomial(p as u64 + 1, j as u64) * n.clone().pow(p + 1 - j));
        total += term * &table.values[j as usize];
    }
    total / Rat::from_integer(BigInt::from(p + 1))
}

/// `Σ_{k=1}^{n} (2k−1)·k²`, the excess layer count, summed literally.
pub fn excess_layer_count(n: u64) -> BigInt {
    let mut total = BigInt::zero();
    for k in 1..=n {
        let k = BigInt::from(k);
        total += (&k * 2 - 1) * &k * &k;
    }
    total
}

/// Names of the registered identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityName {
    OddSumSquare,
    Triangular,
    SumSquares,
    Archimedes,
    Nicomachus,
    SquaresHalf,
    CubesClosed,
    FourthFactored,
    FourthIntegerForm,
    RowsCols,
    Truncated,
    AlmostSquare,
    FourthAsSqTimesSq,
    ArchimedesGen,
    Step2Split,
    ScissorFactor,
    TopLayerDouble,
    RBalance,
    FinalAssembly,
    /// Geometric form of `RowsCols`: main and secondary sections of the
    /// lattice pyramid count the same cells. Evaluated by
    /// [`crate::pyramid::sections_agree`].
    SectionsAgree,
}

impl IdentityName {
    /// The arithmetic registry, in display order.
    pub const REGISTRY: [IdentityName; 19] = [
        IdentityName::OddSumSquare,
        IdentityName::Triangular,
        IdentityName::SumSquares,
        IdentityName::Archimedes,
        IdentityName::Nicomachus,
        IdentityName::SquaresHalf,
        IdentityName::CubesClosed,
        IdentityName::FourthFactored,
        IdentityName::FourthIntegerForm,
        IdentityName::RowsCols,
        IdentityName::Truncated,
        IdentityName::AlmostSquare,
        IdentityName::FourthAsSqTimesSq,
        IdentityName::ArchimedesGen,
        IdentityName::Step2Split,
        IdentityName::ScissorFactor,
        IdentityName::TopLayerDouble,
        IdentityName::RBalance,
        IdentityName::FinalAssembly,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityName::OddSumSquare => "ODD_SUM_SQUARE",
            IdentityName::Triangular => "TRIANGULAR",
            IdentityName::SumSquares => "SUM_SQUARES",
            IdentityName::Archimedes => "ARCHIMEDES",
            IdentityName::Nicomachus => "NICOMACHUS",
            IdentityName::SquaresHalf => "SQUARES_HALF",
            IdentityName::CubesClosed => "CUBES_CLOSED",
            IdentityName::FourthFactored => "FOURTH_FACTORED",
            IdentityName::FourthIntegerForm => "FOURTH_INTEGER_FORM",
            IdentityName::RowsCols => "ROWS_COLS",
            IdentityName::Truncated => "TRUNCATED",
            IdentityName::AlmostSquare => "ALMOST_SQUARE",
            IdentityName::FourthAsSqTimesSq => "FOURTH_AS_SQ_TIMES_SQ",
            IdentityName::ArchimedesGen => "ARCHIMEDES_GEN",
            IdentityName::Step2Split => "STEP2_SPLIT",
            IdentityName::ScissorFactor => "SCISSOR_FACTOR",
            IdentityName::TopLayerDouble => "TOP_LAYER_DOUBLE",
            IdentityName::RBalance => "R_BALANCE",
            IdentityName::FinalAssembly => "FINAL_ASSEMBLY",
            IdentityName::SectionsAgree => "SECTIONS_AGREE",
        }
    }

    /// Parameters the identity needs besides `n`.
    pub fn needs_m(self) -> bool {
        matches!(self, IdentityName::Truncated | IdentityName::AlmostSquare)
    }

    pub fn needs_p(self) -> bool {
        matches!(self, IdentityName::RowsCols | IdentityName::Truncated)
    }

    pub fn needs_d(self) -> bool {
        matches!(self, IdentityName::SectionsAgree)
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityName {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityName::REGISTRY
            .iter()
            .chain(core::iter::once(&IdentityName::SectionsAgree))
            .copied()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| IdentityError::UnknownIdentity(String::from(s)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdentityError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("{identity} needs parameter `{param}`")]
    MissingParameter { identity: IdentityName, param: &'static str },
    #[error("{identity}: constraint violated: {detail}")]
    ConstraintViolated { identity: IdentityName, detail: String },
}

/// Integer parameters of an identity evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IdentityParams {
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub p: Option<u64>,
    pub d: Option<u64>,
}

impl IdentityParams {
    pub fn n(n: u64) -> Self {
        IdentityParams { n: Some(n), ..Default::default() }
    }

    pub fn with_m(mut self, m: u64) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_p(mut self, p: u64) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with_d(mut self, d: u64) -> Self {
        self.d = Some(d);
        self
    }

    /// Present parameters as `(name, value)` pairs in a fixed order.
    pub fn entries(&self) -> Vec<(&'static str, u64)> {
        [("p", self.p), ("d", self.d), ("m", self.m), ("n", self.n)]
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| (k, v)))
            .collect()
    }
}

/// Outcome of evaluating one identity: both sides, exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: IdentityName,
    pub params: IdentityParams,
    pub lhs: QuadExt,
    pub rhs: QuadExt,
    holds: bool,
}

impl IdentityReport {
    pub fn new(identity: IdentityName, params: IdentityParams, lhs: QuadExt, rhs: QuadExt) -> Self {
        let holds = lhs == rhs;
        IdentityReport { identity, params, lhs, rhs, holds }
    }

    pub fn holds(&self) -> bool {
        self.holds
    }
}

/// One-line form: `NAME p=.. n=..: lhs = rhs [holds]`.
impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.identity)?;
        for (k, v) in self.params.entries() {
            write!(f, " {k}={v}")?;
        }
        let rel = if self.holds { "=" } else { "!=" };
        let verdict = if self.holds { "holds" } else { "FAILS" };
        write!(f, ": {} {} {} [{}]", self.lhs, rel, self.rhs, verdict)
    }
}

fn q(v: BigInt) -> QuadExt {
    QuadExt::from(v)
}

fn qi(v: u64) -> QuadExt {
    QuadExt::from(BigInt::from(v))
}

fn qr(r: Rat) -> QuadExt {
    QuadExt::from(r)
}

fn require(identity: IdentityName, v: Option<u64>, param: &'static str) -> Result<u64, IdentityError> {
    v.ok_or(IdentityError::MissingParameter { identity, param })
}

/// Σ_{i=1}^{n} Σ_{k=max(i,m)}^{n} k^p: the triangular array of truncated
/// sums with every row cut at column `m`. Rows are accumulated from the
/// bottom so that each entry is added exactly once per row it belongs to.
fn truncated_array_sum(p: u32, m: u64, n: u64) -> BigInt {
    let mut total = BigInt::zero();
    let mut row = BigInt::zero();
    for i in (1..=n).rev() {
        if i >= m {
            row += BigInt::from(i).pow(p);
        }
        total += &row;
    }
    total
}

/// Evaluate both sides of a registered identity exactly.
pub fn evaluate_identity(identity: IdentityName, params: &IdentityParams) -> Result<IdentityReport, IdentityError> {
    use IdentityName::*;
    let n = require(identity, params.n, "n")?;
    let nb = BigInt::from(n);
    let n1 = &nb + 1;
    let x = strip_root();
    let report = |lhs, rhs| Ok(IdentityReport::new(identity, *params, lhs, rhs));
    match identity {
        OddSumSquare => {
            let lhs: BigInt = (1..=n).map(|k| BigInt::from(2 * k - 1)).sum();
            report(q(lhs), q(&nb * &nb))
        }
        Triangular => {
            let lhs: BigInt = (1..=n).map(BigInt::from).sum();
            report(q(lhs), qr(Rat::new(&nb * &n1, BigInt::from(2))))
        }
        SumSquares => report(q(sum_powers_bruteforce(2, n)), qr(Rat::new(&nb * &n1 * (&nb * 2 + 1), BigInt::from(6)))),
        Archimedes => {
            let t: BigInt = (1..=n).map(BigInt::from).sum();
            report(q(t + &n1 * &nb * &nb), q(sum_powers_bruteforce(2, n) * 3))
        }
        Nicomachus => {
            let t: BigInt = (1..=n).map(BigInt::from).sum();
            report(q(sum_powers_bruteforce(3, n)), q(&t * &t))
        }
        SquaresHalf => {
            let rhs = Rat::from_integer(&nb * &n1) * (Rat::from_integer(nb.clone()) + rat(1, 2)) / rat(3, 1);
            report(q(sum_powers_bruteforce(2, n)), qr(rhs))
        }
        CubesClosed => report(q(sum_powers_bruteforce(3, n)), qr(Rat::new(&nb * &nb * &n1 * &n1, BigInt::from(4)))),
        FourthFactored => {
            let nr = Rat::from_integer(nb.clone());
            let rhs = Rat::from_integer(&nb * &n1) * (&nr + rat(1, 2)) * (&nr * &nr + &nr - rat(1, 3)) / rat(5, 1);
            report(q(sum_powers_bruteforce(4, n)), qr(rhs))
        }
        FourthIntegerForm => {
            let num = &nb * &n1 * (&nb * 2 + 1) * (&nb * &nb * 3 + &nb * 3 - 1);
            report(q(sum_powers_bruteforce(4, n)), qr(Rat::new(num, BigInt::from(30))))
        }
        RowsCols => {
            let p = require(identity, params.p, "p")? as u32;
            report(q(sum_powers_bruteforce(p + 1, n)), q(truncated_array_sum(p, 1, n)))
        }
        Truncated => {
            let p = require(identity, params.p, "p")? as u32;
            let m = require(identity, params.m, "m")?;
            if m < 1 || m > n {
                return Err(IdentityError::ConstraintViolated {
                    identity,
                    detail: alloc::format!("need 1 <= m <= n, got m={m}, n={n}"),
                });
            }
            report(q(sum_powers_range(p + 1, m, n)), q(truncated_array_sum(p, m, n)))
        }
        AlmostSquare => {
            let m = require(identity, params.m, "m")?;
            if m < 1 || m > n {
                return Err(IdentityError::ConstraintViolated {
                    identity,
                    detail: alloc::format!("need 1 <= m <= n, got m={m}, n={n}"),
                });
            }
            let mb = BigInt::from(m);
            let lhs = sum_powers_range(1, m, n) * 2 + &mb * &mb;
            let rhs = &n1 * &n1 - (&n1 - &mb);
            report(q(lhs), q(rhs))
        }
        FourthAsSqTimesSq => {
            let rhs: BigInt = (1..=n).map(|k| BigInt::from(k).pow(2u32) * BigInt::from(k).pow(2u32)).sum();
            report(q(sum_powers_bruteforce(4, n)), q(rhs))
        }
        ArchimedesGen => {
            report(q(sum_powers_bruteforce(4, n) * 5), q(&nb * &nb * &nb * &n1 * &n1 + excess_layer_count(n)))
        }
        Step2Split => {
            let s = &nb * &n1;
            report(q(&nb * &nb * &n1 * &n1), q(&s * &s))
        }
        ScissorFactor => {
            let lhs = (qi(n) - &x) * (qi(n + 1) + &x);
            let rhs = qi(n * n + n) - QuadExt::from_ratio(1, 3);
            report(lhs, rhs)
        }
        TopLayerDouble => {
            report(q(excess_layer_count(n) * 2), q(&nb * &nb * &n1 * &n1 - sum_powers_bruteforce(2, n) * 2))
        }
        RBalance => {
            let leftover = &x * &x + &x;
            let layer = q(&nb * &n1);
            let lhs = q(&nb * &nb * &n1 * &n1) - &leftover * &layer;
            let top = &leftover * &q(&nb * &nb * &n1) + q(excess_layer_count(n));
            report(lhs, QuadExt::from_int(2) * top)
        }
        FinalAssembly => {
            let half = qr(Rat::from_integer(nb.clone()) + rat(1, 2));
            let rhs = half * q(&nb * &n1) * ((qi(n) - &x) * (qi(n + 1) + &x));
            report(q(sum_powers_bruteforce(4, n) * 5), rhs)
        }
        SectionsAgree => {
            let d = require(identity, params.d, "d")?;
            let n32 = u32::try_from(n).map_err(|_| IdentityError::ConstraintViolated {
                identity,
                detail: alloc::format!("n={n} too large for cell enumeration"),
            })?;
            crate::pyramid::sections_agree(d as u32, n32)
                .map_err(|e| IdentityError::ConstraintViolated { identity, detail: alloc::format!("{e}") })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn brute_force_examples() {
        assert_eq!(sum_powers_bruteforce(3, 3), BigInt::from(36));
        assert_eq!(sum_powers_bruteforce(4, 0), BigInt::zero());
        assert_eq!(sum_powers_bruteforce(10, 1000).to_string(), "91409924241424243424241924242500");
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(1, 2));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli(13), Rat::zero());
        assert!(BernoulliTable::upto(20).satisfies_recursion());
    }

    #[test]
    fn faulhaber_examples() {
        assert_eq!(faulhaber(2, 4), rat(30, 1));
        assert_eq!(faulhaber(4, 3), rat(98, 1));
        assert_eq!(faulhaber(1, 0), Rat::zero());
        assert_eq!(faulhaber(10, 1000).to_string(), "91409924241424243424241924242500");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 7), BigInt::zero());
        assert_eq!(binomial(30, 15), BigInt::from(155117520u64));
    }

    #[test]
    fn registry_examples() {
        let r = evaluate_identity(IdentityName::RowsCols, &IdentityParams::n(3).with_p(1)).unwrap();
        assert!(r.holds());
        assert_eq!(r.lhs, QuadExt::from_int(14));
        let r = evaluate_identity(IdentityName::ArchimedesGen, &IdentityParams::n(2)).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (QuadExt::from_int(85), QuadExt::from_int(85)));
        let r = evaluate_identity(IdentityName::AlmostSquare, &IdentityParams::n(3).with_m(2)).unwrap();
        assert_eq!(r.lhs, QuadExt::from_int(14));
        assert!(r.holds());
        let r = evaluate_identity(IdentityName::ScissorFactor, &IdentityParams::n(2)).unwrap();
        assert_eq!(r.lhs, QuadExt::from_ratio(17, 3));
        assert!(r.holds());
        let r = evaluate_identity(IdentityName::Nicomachus, &IdentityParams::n(1)).unwrap();
        assert_eq!(r.to_string(), "NICOMACHUS n=1: 1 = 1 [holds]");
    }

    #[test]
    fn truncated_rows_for_small_case() {
        // p = 0, m = 3, n = 3: 3 = (1) + (1) + (1).
        let r = evaluate_identity(IdentityName::Truncated, &IdentityParams::n(3).with_m(3).with_p(0)).unwrap();
        assert_eq!(r.lhs, QuadExt::from_int(3));
        assert!(r.holds());
    }

    #[test]
    fn parameter_errors() {
        assert_eq!(
            evaluate_identity(IdentityName::AlmostSquare, &IdentityParams::n(3)),
            Err(IdentityError::MissingParameter { identity: IdentityName::AlmostSquare, param: "m" })
        );
        assert!(matches!(
            evaluate_identity(IdentityName::AlmostSquare, &IdentityParams::n(3).with_m(4)),
            Err(IdentityError::ConstraintViolated { .. })
        ));
        assert!(matches!(
            evaluate_identity(IdentityName::Triangular, &IdentityParams::default()),
            Err(IdentityError::MissingParameter { param: "n", .. })
        ));
        assert!("NOPE".parse::<IdentityName>().is_err());
        assert_eq!("r_balance".parse::<IdentityName>(), Ok(IdentityName::RBalance));
    }

    #[test]
    fn final_assembly_cancels_the_root() {
        for n in 1..=20 {
            let r = evaluate_identity(IdentityName::FinalAssembly, &IdentityParams::n(n)).unwrap();
            assert!(r.rhs.is_rational());
            assert!(r.rhs.is_integer());
            assert!(r.holds());
        }
    }
}

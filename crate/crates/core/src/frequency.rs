//! Frequency systems: exponents written as exact rational combinations of
//! declared generators.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{rat_lcm_den, Fixed, IntMatrix, Rational};

/// Relative tolerance of the cached-λ consistency check.
pub const LAMBDA_REL_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    #[serde(serialize_with = "ser_fixed", deserialize_with = "de_value")]
    pub value: Fixed,
    #[serde(default)]
    pub provenance: String,
}

impl Generator {
    pub fn new(label: impl Into<String>, value: Fixed, provenance: impl Into<String>) -> Self {
        Generator { label: label.into(), value, provenance: provenance.into() }
    }

    /// Generator whose value is given by an expression such as `sqrt(2)`,
    /// `-log(3)`, `pi` or a decimal; the expression becomes the provenance.
    pub fn from_expr(label: impl Into<String>, expr: &str) -> Result<Self> {
        Ok(Generator::new(label, parse_value(expr)?, expr.trim()))
    }
}

fn ser_fixed<S: Serializer>(v: &Fixed, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.serialize(s)
}

fn de_value<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Fixed, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Str(String),
        Num(f64),
    }
    match Raw::deserialize(d)? {
        Raw::Str(s) => parse_value(&s).map_err(serde::de::Error::custom),
        Raw::Num(x) => Fixed::from_f64(x).map_err(serde::de::Error::custom),
    }
}

/// Parses `[-]decimal`, `[-]pi`, `[-]sqrt(q)` or `[-]log(q)` with `q` a
/// positive rational such as `2` or `3/2`.
pub fn parse_value(expr: &str) -> Result<Fixed> {
    let t = expr.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, t),
    };
    let call = |name: &str| -> Option<&str> { body.strip_prefix(name)?.trim().strip_prefix('(')?.strip_suffix(')') };
    let v = if body == "pi" {
        Fixed::pi()
    } else if let Some(arg) = call("sqrt") {
        let q: Rational = arg.parse()?;
        if q < Rational::zero() {
            return Err(Error::Parse(format!("sqrt of negative value in {expr:?}")));
        }
        Fixed::from_rational(&q).sqrt()?
    } else if let Some(arg) = call("log") {
        let q: Rational = arg.parse()?;
        if q <= Rational::zero() {
            return Err(Error::Parse(format!("log of non-positive value in {expr:?}")));
        }
        Fixed::ln_rational(&q)?
    } else {
        Fixed::parse_decimal(body)?
    };
    Ok(if neg { -v } else { v })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Independence {
    pub declared: bool,
    #[serde(default)]
    pub justification: String,
}

/// Λ = {λ_j} with λ_j = Σ_k r_{j,k}·g_k.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawSystem")]
pub struct FrequencySystem {
    generators: Vec<Generator>,
    freqs: Vec<Vec<Rational>>,
    independence: Independence,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    allow_constant: bool,
    #[serde(skip)]
    lambdas: Vec<Fixed>,
    #[serde(skip)]
    lambdas_f64: Vec<f64>,
}

#[derive(Deserialize)]
struct RawSystem {
    generators: Vec<Generator>,
    freqs: Vec<Vec<Rational>>,
    independence: Independence,
    #[serde(default)]
    allow_constant: bool,
}

impl TryFrom<RawSystem> for FrequencySystem {
    type Error = Error;
    fn try_from(raw: RawSystem) -> Result<Self> {
        let mut sys = define_system(raw.generators, raw.freqs, raw.allow_constant)?;
        sys.independence = raw.independence;
        Ok(sys)
    }
}

impl PartialEq for FrequencySystem {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.freqs == other.freqs && self.allow_constant == other.allow_constant
    }
}

/// Validates and builds a system. `allow_constant` admits a zero vector (λ = 0).
pub fn define_system(generators: Vec<Generator>, freqs: Vec<Vec<Rational>>, allow_constant: bool) -> Result<FrequencySystem> {
    let m = generators.len();
    let mut labels = HashSet::new();
    for (k, g) in generators.iter().enumerate() {
        if !labels.insert(g.label.as_str()) {
            return Err(Error::InvalidSystem(format!("generators[{k}].label: duplicate label {:?}", g.label)));
        }
        if g.value.is_zero() {
            return Err(Error::InvalidSystem(format!("generators[{k}].value: zero generator")));
        }
        if !g.value.to_f64().is_finite() {
            return Err(Error::InvalidSystem(format!("generators[{k}].value: not finite")));
        }
    }
    let mut seen = HashSet::new();
    for (j, r) in freqs.iter().enumerate() {
        if r.len() != m {
            return Err(Error::InvalidSystem(format!("freqs[{j}]: length {} but {m} generators", r.len())));
        }
        if !seen.insert(r) {
            return Err(Error::InvalidSystem(format!("freqs[{j}]: duplicate frequency vector")));
        }
        if !allow_constant && r.iter().all(Rational::is_zero) {
            return Err(Error::InvalidSystem(format!("freqs[{j}]: zero vector without allow_constant")));
        }
    }
    let lambdas: Vec<Fixed> = freqs
        .iter()
        .map(|r| r.iter().zip(&generators).fold(Fixed::zero(), |acc, (c, g)| &acc + &g.value.mul_rational(c)))
        .collect();
    let lambdas_f64 = lambdas.iter().map(Fixed::to_f64).collect();
    let sys = FrequencySystem {
        generators,
        freqs,
        independence: Independence { declared: false, justification: String::new() },
        allow_constant,
        lambdas,
        lambdas_f64,
    };
    sys.check_consistency()?;
    Ok(sys)
}

impl FrequencySystem {
    pub fn with_independence(mut self, justification: impl Into<String>) -> Self {
        self.independence = Independence { declared: true, justification: justification.into() };
        self
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn freqs(&self) -> &[Vec<Rational>] {
        &self.freqs
    }

    pub fn independence(&self) -> &Independence {
        &self.independence
    }

    pub fn allows_constant(&self) -> bool {
        self.allow_constant
    }

    pub fn n_gens(&self) -> usize {
        self.generators.len()
    }

    pub fn n_freqs(&self) -> usize {
        self.freqs.len()
    }

    pub fn lambda(&self, j: usize) -> f64 {
        self.lambdas_f64[j]
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas_f64
    }

    pub fn lambda_fixed(&self, j: usize) -> &Fixed {
        &self.lambdas[j]
    }

    pub fn generator_values(&self) -> Vec<f64> {
        self.generators.iter().map(|g| g.value.to_f64()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.freqs.iter().flatten().all(Rational::is_integer)
    }

    /// q = lcm of all coefficient denominators.
    pub fn lcm_den(&self) -> BigInt {
        rat_lcm_den(self.freqs.iter().flatten())
    }

    /// max |r_{j,k}|.
    pub fn max_abs_coeff(&self) -> f64 {
        self.freqs.iter().flatten().map(|r| r.abs().to_f64()).fold(0.0, f64::max)
    }

    /// Coefficient matrix (one row per frequency); integral systems only.
    pub fn integer_matrix(&self) -> Result<IntMatrix> {
        if !self.is_integral() {
            return Err(Error::NonIntegral);
        }
        let rows: Vec<Vec<BigInt>> = self.freqs.iter().map(|r| r.iter().map(Rational::to_integer).collect()).collect();
        if rows.is_empty() {
            return Ok(IntMatrix::zeros(0, self.n_gens()));
        }
        IntMatrix::from_rows(&rows)
    }

    /// Restriction to the first `n` frequencies.
    pub fn prefix(&self, n: usize) -> FrequencySystem {
        let mut s = self.clone();
        s.freqs.truncate(n);
        s.lambdas.truncate(n);
        s.lambdas_f64.truncate(n);
        s
    }

    /// Recomputes every λ_j from the generators and compares with the cache.
    pub fn check_consistency(&self) -> Result<()> {
        for (j, r) in self.freqs.iter().enumerate() {
            let direct: f64 = r.iter().zip(&self.generators).map(|(c, g)| c.to_f64() * g.value.to_f64()).sum();
            let cached = self.lambdas_f64[j];
            let scale: f64 = 1.0 + r.iter().zip(&self.generators).map(|(c, g)| (c.to_f64() * g.value.to_f64()).abs()).sum::<f64>();
            if (direct - cached).abs() > LAMBDA_REL_TOL * scale.max(1.0 + cached.abs()) {
                return Err(Error::InvalidSystem(format!("freqs[{j}]: cached lambda inconsistent")));
            }
        }
        Ok(())
    }
}

/// A system with integer coefficient vectors, plus the per-generator divisors
/// applied to reach it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralSystem {
    #[serde(flatten)]
    pub system: FrequencySystem,
    #[serde(serialize_with = "ser_bigints", deserialize_with = "de_bigints")]
    pub scale_record: Vec<BigInt>,
}

fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    strs.serialize(s)
}

fn de_bigints<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Str(String),
        Int(i64),
    }
    Vec::<Raw>::deserialize(d)?
        .into_iter()
        .map(|r| match r {
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(BigInt::from(n)),
        })
        .collect()
}

/// Replaces g_k by g_k/q_k with q_k the lcm of column k's denominators.
pub fn to_integral(system: &FrequencySystem) -> IntegralSystem {
    let m = system.n_gens();
    let q: Vec<BigInt> = (0..m).map(|k| rat_lcm_den(system.freqs.iter().map(|r| &r[k]))).collect();
    let generators = system
        .generators
        .iter()
        .zip(&q)
        .map(|(g, qk)| {
            if qk.is_one() {
                g.clone()
            } else {
                let prov = if g.provenance.is_empty() { g.label.clone() } else { g.provenance.clone() };
                Generator::new(format!("{}/{qk}", g.label), g.value.div_int(qk), format!("({prov})/{qk}"))
            }
        })
        .collect();
    let freqs = system
        .freqs
        .iter()
        .map(|r| r.iter().zip(&q).map(|(c, qk)| c * &Rational::from_int(qk.clone())).collect())
        .collect();
    let mut out = define_system(generators, freqs, system.allow_constant).expect("rescaling preserves validity");
    out.independence = system.independence.clone();
    IntegralSystem { system: out, scale_record: q }
}

/// Primes p ≤ n, ascending.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n as usize + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n as usize {
        if sieve[i] {
            for j in (i * i..=n as usize).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &p)| p).map(|(i, _)| i as u64).collect()
}

/// Generators −log p for primes p ≤ N; frequencies −log n for n = 1..N, with
/// n = 1 the constant term.
pub fn prime_log_system(n: u64) -> Result<IntegralSystem> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("prime_log_system needs N >= 2, got {n}")));
    }
    let primes = primes_up_to(n);
    let generators = primes
        .iter()
        .map(|&p| Generator::new(format!("-log{p}"), -Fixed::ln_int(&BigInt::from(p)).expect("p > 0"), format!("-log({p})")))
        .collect();
    let freqs = (1..=n)
        .map(|mut v| {
            primes
                .iter()
                .map(|&p| {
                    let mut e = 0i64;
                    while v % p == 0 {
                        v /= p;
                        e += 1;
                    }
                    Rational::from_int(e)
                })
                .collect()
        })
        .collect();
    let system = define_system(generators, freqs, true)?.with_independence("unique factorization");
    let scale_record = vec![BigInt::one(); primes.len()];
    Ok(IntegralSystem { system, scale_record })
}

/// Integer n reproduced from an exponent vector over the given primes.
pub fn reconstruct(primes: &[u64], exps: &[Rational]) -> Option<u64> {
    primes.iter().zip(exps).try_fold(1u64, |acc, (&p, e)| {
        let e = e.to_integer().to_u32()?;
        acc.checked_mul(p.checked_pow(e)?)
    })
}

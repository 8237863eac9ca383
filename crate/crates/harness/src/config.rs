//! Scan configuration: one JSON document per run.

use std::path::{Path, PathBuf};

use dioph_core::algebraic::PrecisionPolicy;
use dioph_core::arith::{FactorBudget, PrimeSet};
use dioph_core::bounds::{BoundConstants, LogFormInput};
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::RunError;

pub const SCHEMA_VERSION: u32 = 1;

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

fn default_budget() -> u64 {
    FactorBudget::default().rho_iterations
}

fn default_tolerance() -> f64 {
    0.02
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct Precision {
    /// Fractional bits of the first enclosure attempt.
    pub start_bits: u64,
    /// Refinement stops with a budget error past this.
    pub max_bits: u64,
}

impl Default for Precision {
    fn default() -> Self {
        let p = PrecisionPolicy::default();
        Precision {
            start_bits: p.start_bits,
            max_bits: p.max_bits,
        }
    }
}

impl From<Precision> for PrecisionPolicy {
    fn from(p: Precision) -> Self {
        PrecisionPolicy {
            start_bits: p.start_bits,
            max_bits: p.max_bits,
        }
    }
}

/// Schema mirror of [`LogFormInput`].
#[allow(dead_code)]
#[derive(JsonSchema)]
#[serde(deny_unknown_fields)]
struct LogFormSchema {
    coefficients: Vec<i64>,
    heights: Vec<f64>,
    degree: u32,
    #[serde(default)]
    prime: Option<u64>,
    #[serde(default)]
    delta: Option<f64>,
    #[serde(default)]
    b_n_cap: Option<f64>,
}

/// Schema mirror of [`BoundConstants`].
#[allow(dead_code)]
#[derive(JsonSchema)]
#[serde(deny_unknown_fields)]
struct ConstantsSchema {
    c1: f64,
    c2: f64,
    c3: f64,
    c4: f64,
    c5: f64,
    c6: f64,
    c7: f64,
    source: String,
}

/// What to compute. Big integers and algebraic numbers are strings: numbers
/// accept `7`, `-3/4`, `sqrt(N)`, `phi`, `root(M,D)` and `quad(A,B,C,D)` for
/// `(A + B√D)/C`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Task {
    /// Prime factorization of an integer.
    Factor { n: String },
    /// S-part of one integer.
    Spart {
        n: String,
        #[schemars(with = "Vec<u64>")]
        primes: PrimeSet,
    },
    /// Partial quotients and convergents with certified errors.
    Cf { number: String, count: usize },
    /// Fractions p/q with |θ − p/q| < 1/(2q²).
    Legendre { number: String, q_max: u64 },
    /// Exponent of each convergent against its denominator.
    Mu { number: String, count: usize },
    /// Exponent of ‖bⁿθ‖ against bⁿ.
    Vb {
        number: String,
        base: u64,
        n_max: u32,
    },
    /// Simultaneous approximation of two numbers with a common denominator.
    Simul {
        xi: String,
        zeta: String,
        q_max: u64,
    },
    /// −log‖ξⁿ‖/n together with the power-gap check.
    Nu { number: String, n_max: u32 },
    /// p-adic valuation of a + bα for a root α of X² − tX + m.
    Pmult {
        p: u64,
        t: String,
        m: String,
        #[serde(default)]
        branch: u8,
        x_max: u64,
        max_precision: u32,
    },
    /// Lower bounds for a linear form in logarithms.
    BoundsEval {
        #[schemars(with = "LogFormSchema")]
        input: LogFormInput,
        /// With δ, also bound the coefficients from log|Λ| ≤ −δB.
        #[serde(default)]
        delta: Option<f64>,
    },
    /// Largest x with x ≤ K (log(x/H))^e.
    BoundsInvert { k: f64, h: f64, e: u32 },
    /// Integers prime to the base with few nonzero digits.
    Sparse {
        base: u64,
        max_digits: u32,
        count: usize,
        #[schemars(with = "Vec<u64>")]
        primes: PrimeSet,
    },
    /// Linear recurrence uₙ = a₁uₙ₋₁ + … + a_k uₙ₋ₖ.
    Recurrence {
        coefficients: Vec<String>,
        initial: Vec<String>,
        n_max: usize,
        #[schemars(with = "Vec<u64>")]
        primes: PrimeSet,
    },
    /// aᵐ + bⁿ + 1 over a grid.
    Powersum {
        a: u64,
        b: u64,
        m_max: u32,
        n_max: u32,
        #[schemars(with = "Vec<u64>")]
        primes: PrimeSet,
    },
    /// x ± y for coprime T-units.
    Tunits {
        #[schemars(with = "Vec<u64>")]
        t_primes: PrimeSet,
        e: u32,
        #[schemars(with = "Vec<u64>")]
        primes: PrimeSet,
    },
    /// Values of an integer polynomial (coefficients from the constant term up).
    Poly {
        coefficients: Vec<String>,
        lo: i64,
        hi: i64,
        #[schemars(with = "Vec<u64>")]
        primes: PrimeSet,
    },
    /// Values of a binary form Σ cᵢ x^(d−i) yⁱ at primitive points.
    Form {
        coefficients: Vec<String>,
        height: u64,
        #[schemars(with = "Vec<u64>")]
        primes: PrimeSet,
    },
    /// S-parts and greatest prime factors of convergent products pₙqₙ.
    Convergents {
        number: String,
        n_max: usize,
        #[schemars(with = "Vec<u64>")]
        primes: PrimeSet,
    },
    /// Products of three consecutive convergent denominators.
    Triples {
        number: String,
        n_max: usize,
        #[schemars(with = "Vec<u64>")]
        primes: PrimeSet,
    },
    /// Best approximation of n by y^q times a small rational.
    Frontier { n: String, q_max: u64, y_max: u64 },
    /// Decomposition of q/⌊qξ⌋ over S with the certified distance to 1.
    Lambdaq {
        number: String,
        q_min: u64,
        q_max: u64,
        #[schemars(with = "Vec<u64>")]
        primes: PrimeSet,
    },
    /// a₁x₁ + a₂x₂ = 1 in S-units.
    Sunit {
        a1: String,
        a2: String,
        #[schemars(with = "Vec<u64>")]
        primes: PrimeSet,
        e: u32,
    },
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Factor { .. } => "factor",
            Task::Spart { .. } => "spart",
            Task::Cf { .. } => "cf",
            Task::Legendre { .. } => "legendre",
            Task::Mu { .. } => "mu",
            Task::Vb { .. } => "vb",
            Task::Simul { .. } => "simul",
            Task::Nu { .. } => "nu",
            Task::Pmult { .. } => "pmult",
            Task::BoundsEval { .. } => "bounds_eval",
            Task::BoundsInvert { .. } => "bounds_invert",
            Task::Sparse { .. } => "sparse",
            Task::Recurrence { .. } => "recurrence",
            Task::Powersum { .. } => "powersum",
            Task::Tunits { .. } => "tunits",
            Task::Poly { .. } => "poly",
            Task::Form { .. } => "form",
            Task::Convergents { .. } => "convergents",
            Task::Triples { .. } => "triples",
            Task::Frontier { .. } => "frontier",
            Task::Lambdaq { .. } => "lambdaq",
            Task::Sunit { .. } => "sunit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub task: Task,
    #[serde(default)]
    pub precision: Precision,
    /// Brent rho iterations allowed per factorization.
    #[serde(default = "default_budget")]
    pub factor_budget: u64,
    #[serde(default)]
    #[schemars(with = "Option<ConstantsSchema>")]
    pub constants: Option<BoundConstants>,
    #[serde(default)]
    pub format: OutputFormat,
    /// Worker threads; absent means one per core.
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub baseline: Option<PathBuf>,
    /// Allowed absolute drift of each tracked statistic from the baseline.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

impl ScanConfig {
    pub fn new(task: Task) -> Self {
        ScanConfig {
            schema_version: SCHEMA_VERSION,
            task,
            precision: Precision::default(),
            factor_budget: default_budget(),
            constants: None,
            format: OutputFormat::default(),
            threads: None,
            baseline: None,
            tolerance: default_tolerance(),
        }
    }

    /// Parse with the JSON path of the first offending field in the error.
    pub fn from_json(text: &str) -> Result<Self, RunError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: ScanConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            RunError::Invalid(format!("config at {path}: {}", e.into_inner()))
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, RunError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), RunError> {
        let bad = |m: &str| Err(RunError::Invalid(m.to_string()));
        if self.schema_version != SCHEMA_VERSION {
            return bad(&format!(
                "unsupported schema_version {}",
                self.schema_version
            ));
        }
        if self.precision.start_bits == 0 || self.precision.start_bits > self.precision.max_bits {
            return bad("precision needs 0 < start_bits <= max_bits");
        }
        if self.factor_budget == 0 {
            return bad("factor_budget must be positive");
        }
        if self.threads == Some(0) {
            return bad("threads must be positive");
        }
        if !(self.tolerance >= 0.0 && self.tolerance.is_finite()) {
            return bad("tolerance must be a finite value >= 0");
        }
        if let Some(c) = &self.constants {
            c.validate().map_err(|e| RunError::Invalid(e.to_string()))?;
        }
        let empty = match &self.task {
            Task::Cf { count, .. } | Task::Mu { count, .. } | Task::Sparse { count, .. } => {
                *count == 0
            }
            Task::Legendre { q_max, .. } | Task::Simul { q_max, .. } => *q_max == 0,
            Task::Vb { n_max, .. } | Task::Nu { n_max, .. } => *n_max == 0,
            Task::Powersum { m_max, n_max, .. } => *m_max == 0 || *n_max == 0,
            Task::Poly { lo, hi, .. } => lo > hi,
            Task::Form { height, .. } => *height == 0,
            Task::Lambdaq { q_min, q_max, .. } => q_min > q_max,
            Task::Pmult { x_max, .. } => *x_max < 2,
            _ => false,
        };
        if empty {
            return bad("empty range");
        }
        Ok(())
    }

    /// SHA-256 of the normalized config (defaults filled in), hex encoded.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        Sha256::digest(&bytes)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn policy(&self) -> PrecisionPolicy {
        self.precision.into()
    }

    pub fn budget(&self) -> FactorBudget {
        FactorBudget {
            rho_iterations: self.factor_budget,
        }
    }
}

/// The published JSON schema of [`ScanConfig`].
pub fn schema_json() -> String {
    let schema = schemars::schema_for!(ScanConfig);
    serde_json::to_string_pretty(&schema).expect("schema serializes") + "\n"
}

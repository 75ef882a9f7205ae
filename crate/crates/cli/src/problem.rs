//! Problem files: the serialized [`ProblemSpec`] and its validated form.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use revnf_core::{
    HomogeneousVF, Mode, RatMatrix, Rational, Sign, SignedElement, SignedGroup, TermIndex,
    TruncatedVF, DEFAULT_ORDER_CAP,
};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub dimension: usize,
    pub linear_part: Vec<Vec<String>>,
    #[serde(default)]
    pub group_generators: Vec<GeneratorSpec>,
    pub degrees: DegreeRange,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector_field: Option<Vec<TermSpec>>,
    pub mode: ModeSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub matrix: Vec<Vec<String>>,
    pub sigma: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeRange {
    pub min: usize,
    pub max: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    /// One-based component index.
    pub component: usize,
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeSpec {
    None,
    Equivariant,
    ReversibleEquivariant,
}

impl ModeSpec {
    pub fn as_str(self) -> &'static str {
        match self {
            ModeSpec::None => "none",
            ModeSpec::Equivariant => "equivariant",
            ModeSpec::ReversibleEquivariant => "reversible_equivariant",
        }
    }
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem specs always serialize")
    }
}

/// Parses `p` or `p/q` with `q > 0`; `at` names the position for messages.
pub fn parse_rational(s: &str, at: &str) -> Result<Rational, CliError> {
    let bad = |why: &str| CliError::Parse(format!("{at}: invalid rational {s:?}: {why}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (s, None),
    };
    let num = BigInt::from_str(num).map_err(|_| bad("numerator is not an integer"))?;
    let den = match den {
        None => BigInt::from(1),
        Some(q) => {
            if q.is_empty() || !q.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("denominator must be a positive integer"));
            }
            let q = BigInt::from_str(q).map_err(|_| bad("denominator is not an integer"))?;
            if q == BigInt::from(0) {
                return Err(bad("denominator must be positive"));
            }
            q
        }
    };
    Ok(Rational::new(num, den))
}

fn parse_matrix(rows: &[Vec<String>], n: usize, at: &str) -> Result<RatMatrix, CliError> {
    if rows.len() != n {
        return Err(CliError::Validation(format!(
            "{at}: expected {n} rows, found {}",
            rows.len()
        )));
    }
    let mut out = Vec::with_capacity(n);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(CliError::Validation(format!(
                "{at}[{r}]: expected {n} entries, found {}",
                row.len()
            )));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(c, s)| parse_rational(s, &format!("{at}[{r}][{c}]")))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(parsed);
    }
    Ok(RatMatrix::from_rows_with_cols(out, n).expect("shape checked"))
}

/// A validated problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub spec: ProblemSpec,
    pub linear: RatMatrix,
    pub group: SignedGroup,
    pub field: TruncatedVF,
}

impl Problem {
    pub fn n(&self) -> usize {
        self.spec.dimension
    }

    pub fn mode(&self) -> Mode<'_> {
        match self.spec.mode {
            ModeSpec::None => Mode::Nonsymmetric,
            _ => Mode::ReversibleEquivariant(&self.group),
        }
    }

    pub fn group_for_mode(&self) -> Option<&SignedGroup> {
        self.mode().group()
    }

    /// Parses rationals (parse errors) and checks shapes and symmetry
    /// hypotheses (validation errors).
    pub fn from_spec(spec: ProblemSpec) -> Result<Self, CliError> {
        // Every rational is parsed up front so malformed numbers are parse errors
        // regardless of any shape problem elsewhere in the file.
        for (r, row) in spec.linear_part.iter().enumerate() {
            for (c, s) in row.iter().enumerate() {
                parse_rational(s, &format!("linear_part[{r}][{c}]"))?;
            }
        }
        for (i, g) in spec.group_generators.iter().enumerate() {
            for (r, row) in g.matrix.iter().enumerate() {
                for (c, s) in row.iter().enumerate() {
                    parse_rational(s, &format!("group_generators[{i}].matrix[{r}][{c}]"))?;
                }
            }
        }
        let coefficients = spec
            .vector_field
            .iter()
            .flatten()
            .enumerate()
            .map(|(i, t)| parse_rational(&t.coefficient, &format!("vector_field[{i}].coefficient")))
            .collect::<Result<Vec<_>, _>>()?;

        let n = spec.dimension;
        if n == 0 {
            return Err(CliError::Validation("dimension must be at least 1".into()));
        }
        let linear = parse_matrix(&spec.linear_part, n, "linear_part")?;
        let DegreeRange { min, max } = spec.degrees;
        if min < 2 {
            return Err(CliError::Validation(format!(
                "degrees.min must be >= 2, found {min}"
            )));
        }
        if min > max {
            return Err(CliError::Validation(format!(
                "degrees.min ({min}) exceeds degrees.max ({max})"
            )));
        }

        let mut gens = Vec::with_capacity(spec.group_generators.len());
        for (i, g) in spec.group_generators.iter().enumerate() {
            let at = format!("group_generators[{i}]");
            let rho = parse_matrix(&g.matrix, n, &format!("{at}.matrix"))?;
            let sigma = Sign::from_int(g.sigma).ok_or_else(|| {
                CliError::Validation(format!("{at}.sigma: must be 1 or -1, found {}", g.sigma))
            })?;
            if spec.mode == ModeSpec::Equivariant && sigma == Sign::Minus {
                return Err(CliError::Validation(format!(
                    "{at}.sigma: mode \"equivariant\" requires every sigma to be 1"
                )));
            }
            gens.push(SignedElement::new(rho, sigma));
        }
        let group = match spec.mode {
            ModeSpec::None => SignedGroup::trivial(n),
            _ => SignedGroup::generate(n, &gens, DEFAULT_ORDER_CAP)?,
        };

        let terms = spec.vector_field.as_deref().unwrap_or_default();
        let top = terms
            .iter()
            .map(|t| t.exponents.iter().map(|&a| a as usize).sum::<usize>())
            .max()
            .unwrap_or(0)
            .max(max);
        let mut field = TruncatedVF::from_linear(&linear, top)?;
        for (i, (t, c)) in terms.iter().zip(coefficients).enumerate() {
            let at = format!("vector_field[{i}]");
            if t.component == 0 || t.component > n {
                return Err(CliError::Validation(format!(
                    "{at}.component: must be in 1..={n}, found {}",
                    t.component
                )));
            }
            if t.exponents.len() != n {
                return Err(CliError::Validation(format!(
                    "{at}.exponents: expected {n} entries, found {}",
                    t.exponents.len()
                )));
            }
            let degree: usize = t.exponents.iter().map(|&a| a as usize).sum();
            match degree {
                0 => {
                    return Err(CliError::Validation(format!(
                        "{at}: {}",
                        revnf_core::Error::NonzeroConstant
                    )))
                }
                1 => {
                    return Err(CliError::Validation(format!(
                        "{at}: linear terms belong in linear_part"
                    )))
                }
                _ => {}
            }
            let part = HomogeneousVF::from_terms(
                n,
                degree,
                [(TermIndex::new(t.component - 1, t.exponents.clone()), c)],
            )?;
            field.add_part(&part)?;
        }
        let problem = Problem {
            spec,
            linear,
            group,
            field,
        };
        problem.mode().check_jet(&problem.field)?;
        Ok(problem)
    }
}

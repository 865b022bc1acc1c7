//! Finite free chain complexes over `Z[H]` and the presentation 2-complex.
//!
//! Chains are column vectors: `boundaries[k-1]` is `d_k : C_k -> C_{k-1}`, of
//! shape `n_{k-1} x n_k`, and entry `(i, j)` is the coefficient of the i-th
//! `(k-1)`-cell in the boundary of the j-th `k`-cell.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{AlgebraError, ComplexError};
use crate::fox::{abelianize, fox_derivative, AbelianizationMap, GroupRingElement};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::presentation::{CharacterClass, FreeWord, Presentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryComplex {
    ring_rank: usize,
    variables: Vec<String>,
    dims: Vec<usize>,
    boundaries: Vec<LaurentMatrix>,
}

impl BoundaryComplex {
    /// Validates shapes and `d_k d_{k+1} = 0`.
    pub fn new(
        ring_rank: usize,
        variables: Vec<String>,
        dims: Vec<usize>,
        boundaries: Vec<LaurentMatrix>,
    ) -> Result<Self, ComplexError> {
        if variables.len() != ring_rank {
            return Err(ComplexError::ShapeMismatch(format!(
                "{} variable names for ring rank {ring_rank}",
                variables.len()
            )));
        }
        if dims.is_empty() {
            return Err(ComplexError::ShapeMismatch("no chain groups".into()));
        }
        if boundaries.len() + 1 != dims.len() {
            return Err(ComplexError::ShapeMismatch(format!(
                "{} boundary matrices for {} chain groups",
                boundaries.len(),
                dims.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.nvars() != ring_rank {
                return Err(AlgebraError::RankMismatch {
                    left: ring_rank,
                    right: d.nvars(),
                }
                .into());
            }
            if d.shape() != (dims[k], dims[k + 1]) {
                return Err(ComplexError::ShapeMismatch(format!(
                    "d{} has shape {}x{}, expected {}x{}",
                    k + 1,
                    d.rows(),
                    d.cols(),
                    dims[k],
                    dims[k + 1]
                )));
            }
        }
        for k in 0..boundaries.len().saturating_sub(1) {
            let prod = boundaries[k].checked_mul(&boundaries[k + 1])?;
            for i in 0..prod.rows() {
                for j in 0..prod.cols() {
                    if !prod.get(i, j).is_zero() {
                        return Err(ComplexError::BoundarySquareNonzero {
                            k: k + 1,
                            row: i,
                            col: j,
                        });
                    }
                }
            }
        }
        Ok(BoundaryComplex {
            ring_rank,
            variables,
            dims,
            boundaries,
        })
    }

    pub fn ring_rank(&self) -> usize {
        self.ring_rank
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d_k` for `1 <= k <= d`.
    pub fn boundary(&self, k: usize) -> Option<&LaurentMatrix> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn boundaries(&self) -> &[LaurentMatrix] {
        &self.boundaries
    }

    /// Largest `k` with `n_k > 0`.
    pub fn top_dim(&self) -> usize {
        self.dims.iter().rposition(|&n| n > 0).unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// The same complex over `Z[H]` with `t -> t^{-1}`: the complex of `-xi`.
    pub fn reflect(&self) -> Self {
        BoundaryComplex {
            ring_rank: self.ring_rank,
            variables: self.variables.clone(),
            dims: self.dims.clone(),
            boundaries: self.boundaries.iter().map(LaurentMatrix::reflect).collect(),
        }
    }

    /// Serializes to the chain-complex JSON schema.
    pub fn to_json(&self) -> Value {
        let boundaries: Vec<Value> = self
            .boundaries
            .iter()
            .map(|d| {
                Value::Array(
                    d.to_rows()
                        .iter()
                        .map(|row| Value::Array(row.iter().map(poly_to_json).collect()))
                        .collect(),
                )
            })
            .collect();
        json!({
            "ring_rank": self.ring_rank,
            "variables": self.variables,
            "dims": self.dims,
            "boundaries": boundaries,
        })
    }
}

fn poly_to_json(p: &LaurentPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(e, c)| {
                let coeff = match c.to_i64() {
                    Some(small) => json!(small),
                    None => json!(c.to_string()),
                };
                json!([e, coeff])
            })
            .collect(),
    )
}

fn malformed(msg: impl Into<String>) -> ComplexError {
    ComplexError::MalformedTerm(msg.into())
}

fn parse_term(v: &Value, r: usize, at: &str) -> Result<(Vec<i64>, BigInt), ComplexError> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| malformed(format!("{at}: a term is [[exponents], coefficient]")))?;
    let exps = pair[0]
        .as_array()
        .ok_or_else(|| malformed(format!("{at}: exponent vector must be a list")))?;
    if exps.len() != r {
        return Err(malformed(format!(
            "{at}: exponent vector has {} entries, ring rank is {r}",
            exps.len()
        )));
    }
    let exps = exps
        .iter()
        .map(|x| {
            x.as_i64()
                .ok_or_else(|| malformed(format!("{at}: exponent `{x}` is not a 64-bit integer")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let coeff = match &pair[1] {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| malformed(format!("{at}: coefficient `{n}` is not an integer")))?,
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| malformed(format!("{at}: coefficient `{s}` is not an integer")))?,
        other => return Err(malformed(format!("{at}: coefficient `{other}` is not an integer"))),
    };
    if coeff == BigInt::from(0) {
        return Err(malformed(format!("{at}: zero coefficient")));
    }
    Ok((exps, coeff))
}

/// Reads the chain-complex JSON schema and validates the result.
pub fn load_complex(doc: &Value) -> Result<BoundaryComplex, ComplexError> {
    let obj = doc
        .as_object()
        .ok_or_else(|| ComplexError::ShapeMismatch("document must be a JSON object".into()))?;
    let field = |name: &str| {
        obj.get(name)
            .ok_or_else(|| ComplexError::ShapeMismatch(format!("missing field `{name}`")))
    };
    let r = field("ring_rank")?
        .as_u64()
        .ok_or_else(|| ComplexError::ShapeMismatch("`ring_rank` must be a nonnegative integer".into()))?
        as usize;
    let variables = match obj.get("variables") {
        None => LaurentPoly::default_var_names(r),
        Some(v) => v
            .as_array()
            .and_then(|a| {
                a.iter()
                    .map(|x| x.as_str().map(str::to_string))
                    .collect::<Option<Vec<_>>>()
            })
            .ok_or_else(|| ComplexError::ShapeMismatch("`variables` must be a list of strings".into()))?,
    };
    let dims = field("dims")?
        .as_array()
        .and_then(|a| {
            a.iter()
                .map(|x| x.as_u64().map(|n| n as usize))
                .collect::<Option<Vec<_>>>()
        })
        .ok_or_else(|| ComplexError::ShapeMismatch("`dims` must be a list of nonnegative integers".into()))?;
    let raw = field("boundaries")?
        .as_array()
        .ok_or_else(|| ComplexError::ShapeMismatch("`boundaries` must be a list".into()))?;
    if dims.is_empty() || raw.len() + 1 != dims.len() {
        return Err(ComplexError::ShapeMismatch(format!(
            "{} boundary matrices for {} chain groups",
            raw.len(),
            dims.len()
        )));
    }
    let mut boundaries = Vec::with_capacity(raw.len());
    for (k, mv) in raw.iter().enumerate() {
        let (rows, cols) = (dims[k], dims[k + 1]);
        let row_vals = mv
            .as_array()
            .ok_or_else(|| ComplexError::ShapeMismatch(format!("d{} must be a list of rows", k + 1)))?;
        if row_vals.len() != rows {
            return Err(ComplexError::ShapeMismatch(format!(
                "d{} has {} rows, expected {rows}",
                k + 1,
                row_vals.len()
            )));
        }
        let mut m = LaurentMatrix::zeros(r, rows, cols);
        for (i, rv) in row_vals.iter().enumerate() {
            let entries = rv
                .as_array()
                .ok_or_else(|| ComplexError::ShapeMismatch(format!("d{} row {i} must be a list", k + 1)))?;
            if entries.len() != cols {
                return Err(ComplexError::ShapeMismatch(format!(
                    "d{} row {i} has {} entries, expected {cols}",
                    k + 1,
                    entries.len()
                )));
            }
            for (j, ev) in entries.iter().enumerate() {
                let at = format!("d{} entry ({i}, {j})", k + 1);
                let terms = ev
                    .as_array()
                    .ok_or_else(|| malformed(format!("{at}: entry must be a list of terms")))?;
                let parsed = terms
                    .iter()
                    .map(|t| parse_term(t, r, &at))
                    .collect::<Result<Vec<_>, _>>()?;
                m.set(i, j, LaurentPoly::from_terms(r, parsed));
            }
        }
        boundaries.push(m);
    }
    BoundaryComplex::new(r, variables, dims, boundaries)
}

/// `load_complex` from JSON text.
pub fn load_complex_str(text: &str) -> Result<BoundaryComplex, ComplexError> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| ComplexError::ShapeMismatch(format!("invalid JSON: {e}")))?;
    load_complex(&doc)
}

/// Cellular chain complex of the universal cover of the presentation 2-complex,
/// pushed to `Z[H]`: `d_1` column `i` is `x_i - 1`, `d_2` entry `(i, j)` is the
/// image of `d r_j / d x_i`.
pub fn assemble_presentation_complex(p: &Presentation, xi: &CharacterClass) -> Result<BoundaryComplex, ComplexError> {
    if xi.num_generators() != p.num_generators() {
        return Err(ComplexError::ShapeMismatch(format!(
            "class has {} entries, presentation has {} generators",
            xi.num_generators(),
            p.num_generators()
        )));
    }
    let map = AbelianizationMap::from_class(xi)?;
    let r = map.rank();
    let g = p.num_generators();
    let m = p.num_relators();
    let mut d1 = LaurentMatrix::zeros(r, 1, g);
    for i in 0..g {
        let x = GroupRingElement::from_word(FreeWord::generator(i));
        d1.set(0, i, abelianize(&(&x - &GroupRingElement::one()), &map)?);
    }
    let mut d2 = LaurentMatrix::zeros(r, g, m);
    for (j, rel) in p.relators().iter().enumerate() {
        for i in 0..g {
            d2.set(i, j, abelianize(&fox_derivative(rel, i), &map)?);
        }
    }
    BoundaryComplex::new(r, LaurentPoly::default_var_names(r), vec![1, g, m], vec![d1, d2])
}

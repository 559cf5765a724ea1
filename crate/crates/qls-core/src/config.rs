//! JSON job configs: symbolic scalar syntax, datum/action schemas, and
//! smash-eval term lists. Scalars are never decimals; everything resolves to
//! exact cyclotomic numbers.

use num::{BigInt, BigRational};
use serde_json::Value;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::group_chars::AbelianGroup;
use crate::hopf::{BasisLabel, Bosonization, QLSDatum, TaftDatum};
use crate::qas::{ActionSpec, ModuleAction, PMatrix, QuantumAffineSpace, SkewTarget};
use crate::smash::{SmashElement, SmashLabel};

fn cfg_err(path: &str, msg: &str) -> Error {
    Error::Config(format!("{path}: {msg}"))
}

/// Parses {"zeta": N, "pow": k}, {"num": a, "den": b}, plain integers, and
/// {"prod": [...]} / {"sum": [...]} combinations.
pub fn parse_scalar(v: &Value, path: &str) -> Result<CycNumber> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| cfg_err(path, "scalars must be exact; decimals are not allowed"))?;
            Ok(CycNumber::from_integer(i))
        }
        Value::Object(map) => {
            if let Some(z) = map.get("zeta") {
                let n = z
                    .as_u64()
                    .ok_or_else(|| cfg_err(path, "zeta must be a positive integer"))?;
                let k = match map.get("pow") {
                    None => 1,
                    Some(p) => p
                        .as_i64()
                        .ok_or_else(|| cfg_err(path, "pow must be an integer"))?,
                };
                return CycNumber::root_of_unity(n, k)
                    .map_err(|e| cfg_err(path, &e.to_string()));
            }
            if let Some(num) = map.get("num") {
                let a = num
                    .as_i64()
                    .ok_or_else(|| cfg_err(path, "num must be an integer"))?;
                let b = map
                    .get("den")
                    .and_then(|d| d.as_i64())
                    .ok_or_else(|| cfg_err(path, "den must be a nonzero integer"))?;
                if b == 0 {
                    return Err(cfg_err(path, "den must be nonzero"));
                }
                return Ok(CycNumber::from_rational(BigRational::new(
                    BigInt::from(a),
                    BigInt::from(b),
                )));
            }
            if let Some(Value::Array(items)) = map.get("prod") {
                let mut acc = CycNumber::one();
                for (i, item) in items.iter().enumerate() {
                    acc = acc.mul(&parse_scalar(item, &format!("{path}.prod[{i}]"))?);
                }
                return Ok(acc);
            }
            if let Some(Value::Array(items)) = map.get("sum") {
                let mut acc = CycNumber::zero();
                for (i, item) in items.iter().enumerate() {
                    acc = acc.add(&parse_scalar(item, &format!("{path}.sum[{i}]"))?);
                }
                return Ok(acc);
            }
            Err(cfg_err(
                path,
                "expected integer, {num, den}, {zeta, pow}, {prod: [...]}, or {sum: [...]}",
            ))
        }
        _ => Err(cfg_err(path, "scalar must be a number or object")),
    }
}

fn parse_i64_list(v: &Value, path: &str) -> Result<Vec<i64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| cfg_err(path, "expected an array of integers"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_i64()
                .ok_or_else(|| cfg_err(&format!("{path}[{i}]"), "expected an integer"))
        })
        .collect()
}

fn parse_u32_list(v: &Value, path: &str) -> Result<Vec<u32>> {
    parse_i64_list(v, path)?
        .into_iter()
        .map(|x| u32::try_from(x).map_err(|_| cfg_err(path, "expected a nonnegative integer")))
        .collect()
}

/// A fully parsed job: the validated-on-demand datum, space, and action data.
#[derive(Debug)]
pub struct JobConfig {
    pub group: AbelianGroup,
    pub datum: QLSDatum,
    pub p: PMatrix,
    pub spec: ActionSpec,
    pub degree_cap: u32,
    pub strict: bool,
    pub smash_left: Option<Value>,
    pub smash_right: Option<Value>,
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<JobConfig> {
        let root: Value = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("config is not valid JSON: {e}")))?;
        let obj = root
            .as_object()
            .ok_or_else(|| cfg_err("$", "config must be a JSON object"))?;

        let factors: Vec<u64> = parse_i64_list(
            obj.get("group")
                .and_then(|g| g.get("factors"))
                .ok_or_else(|| cfg_err("group.factors", "missing"))?,
            "group.factors",
        )?
        .into_iter()
        .map(|d| u64::try_from(d).map_err(|_| cfg_err("group.factors", "orders must be positive")))
        .collect::<Result<_>>()?;
        let group = AbelianGroup::new(factors)?;

        let datum = if let Some(taft) = obj.get("taft") {
            let n = taft
                .get("n")
                .and_then(|v| v.as_u64())
                .ok_or_else(|| cfg_err("taft.n", "missing or not a positive integer"))?;
            let m = taft
                .get("m")
                .and_then(|v| v.as_u64())
                .ok_or_else(|| cfg_err("taft.m", "missing or not a positive integer"))?;
            let lambda = parse_scalar(
                taft.get("lambda")
                    .ok_or_else(|| cfg_err("taft.lambda", "missing"))?,
                "taft.lambda",
            )?;
            let alpha = match taft.get("alpha") {
                None => CycNumber::zero(),
                Some(a) => parse_scalar(a, "taft.alpha")?,
            };
            TaftDatum::new(n, m, lambda, alpha)?.to_qls()?
        } else {
            let qls = obj
                .get("qls")
                .ok_or_else(|| cfg_err("qls", "missing (provide qls or taft)"))?;
            let g_rows = qls
                .get("g")
                .and_then(|v| v.as_array())
                .ok_or_else(|| cfg_err("qls.g", "missing array"))?;
            let chi_rows = qls
                .get("chi")
                .and_then(|v| v.as_array())
                .ok_or_else(|| cfg_err("qls.chi", "missing array"))?;
            let mut g_list = Vec::with_capacity(g_rows.len());
            for (i, row) in g_rows.iter().enumerate() {
                g_list.push(group.element(&parse_i64_list(row, &format!("qls.g[{i}]"))?)?);
            }
            let mut chi_list = Vec::with_capacity(chi_rows.len());
            for (i, row) in chi_rows.iter().enumerate() {
                chi_list.push(group.character(&parse_i64_list(row, &format!("qls.chi[{i}]"))?)?);
            }
            QLSDatum {
                group: group.clone(),
                g_list,
                chi_list,
            }
        };
        let theta = datum.g_list.len();

        let p_rows = obj
            .get("p")
            .and_then(|v| v.as_array())
            .ok_or_else(|| cfg_err("p", "missing p-matrix"))?;
        let mut entries = Vec::with_capacity(p_rows.len());
        for (i, row) in p_rows.iter().enumerate() {
            let cells = row
                .as_array()
                .ok_or_else(|| cfg_err(&format!("p[{i}]"), "expected an array"))?;
            let mut out = Vec::with_capacity(cells.len());
            for (j, cell) in cells.iter().enumerate() {
                out.push(parse_scalar(cell, &format!("p[{i}][{j}]"))?);
            }
            entries.push(out);
        }
        let p = PMatrix::new(entries)?;
        let n = p.n();

        let action = obj
            .get("action")
            .ok_or_else(|| cfg_err("action", "missing"))?;
        let gamma_rows = action
            .get("gamma")
            .and_then(|v| v.as_array())
            .ok_or_else(|| cfg_err("action.gamma", "missing array"))?;
        let mut gamma = Vec::with_capacity(gamma_rows.len());
        for (k, row) in gamma_rows.iter().enumerate() {
            let cells = row
                .as_array()
                .ok_or_else(|| cfg_err(&format!("action.gamma[{k}]"), "expected an array"))?;
            let mut out = Vec::with_capacity(cells.len());
            for (j, cell) in cells.iter().enumerate() {
                out.push(parse_scalar(cell, &format!("action.gamma[{k}][{j}]"))?);
            }
            gamma.push(out);
        }

        let mut targets = vec![vec![None; n]; theta];
        if let Some(Value::Array(hits)) = action.get("x") {
            for (k, hit) in hits.iter().enumerate() {
                let path = format!("action.x[{k}]");
                let i = hit
                    .get("i")
                    .and_then(|v| v.as_u64())
                    .ok_or_else(|| cfg_err(&path, "missing 1-based operator index i"))?
                    as usize;
                let j = hit
                    .get("j")
                    .and_then(|v| v.as_u64())
                    .ok_or_else(|| cfg_err(&path, "missing 1-based variable index j"))?
                    as usize;
                if i == 0 || i > theta || j == 0 || j > n {
                    return Err(cfg_err(&path, "index out of range"));
                }
                let coeff = match hit.get("c") {
                    None => CycNumber::one(),
                    Some(c) => parse_scalar(c, &format!("{path}.c"))?,
                };
                let beta = parse_u32_list(
                    hit.get("beta").ok_or_else(|| cfg_err(&path, "missing beta"))?,
                    &format!("{path}.beta"),
                )?;
                if beta.len() != n {
                    return Err(cfg_err(&format!("{path}.beta"), "wrong length"));
                }
                targets[i - 1][j - 1] = Some(SkewTarget { coeff, beta });
            }
        }

        let options = obj.get("options");
        let degree_cap = options
            .and_then(|o| o.get("degree_cap"))
            .and_then(|v| v.as_u64())
            .map(|v| v as u32)
            .unwrap_or(crate::criteria::DEFAULT_DEGREE_CAP);
        let strict = options
            .and_then(|o| o.get("strict"))
            .and_then(|v| v.as_bool())
            .unwrap_or(false);

        Ok(JobConfig {
            group,
            datum,
            p,
            spec: ActionSpec { gamma, targets },
            degree_cap,
            strict,
            smash_left: obj.get("smash").and_then(|s| s.get("left")).cloned(),
            smash_right: obj.get("smash").and_then(|s| s.get("right")).cloned(),
        })
    }

    /// Builds the validated action (runs the full identity checks).
    pub fn action(&self) -> Result<ModuleAction> {
        let boson = Bosonization::new(self.datum.clone())?;
        let space = QuantumAffineSpace::new(self.p.clone());
        ModuleAction::new(boson, space, self.spec.clone(), self.degree_cap.min(8))
    }

    /// Parses a smash element: an array of {u, x, g, c} terms.
    pub fn parse_smash_element(&self, v: &Value, path: &str) -> Result<SmashElement> {
        let terms = v
            .as_array()
            .ok_or_else(|| cfg_err(path, "expected an array of terms"))?;
        let theta = self.datum.g_list.len();
        let n = self.p.n();
        let rank = self.group.rank();
        let mut out = SmashElement::zero();
        for (k, term) in terms.iter().enumerate() {
            let tp = format!("{path}[{k}]");
            let u = match term.get("u") {
                None => vec![0; n],
                Some(v) => parse_u32_list(v, &format!("{tp}.u"))?,
            };
            let x = match term.get("x") {
                None => vec![0; theta],
                Some(v) => parse_u32_list(v, &format!("{tp}.x"))?,
            };
            let g = match term.get("g") {
                None => vec![0; rank],
                Some(v) => self
                    .group
                    .element(&parse_i64_list(v, &format!("{tp}.g"))?)?
                    .exps()
                    .to_vec(),
            };
            if u.len() != n || x.len() != theta {
                return Err(cfg_err(&tp, "u/x exponent lists have wrong length"));
            }
            let c = match term.get("c") {
                None => CycNumber::one(),
                Some(v) => parse_scalar(v, &format!("{tp}.c"))?,
            };
            out.add_term(SmashLabel { u, b: BasisLabel { alpha: x, g } }, c);
        }
        Ok(out)
    }
}

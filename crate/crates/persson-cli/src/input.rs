//! Arrangement-file parsing: exact rational strings, schema validation, and
//! conversion into the library's incidence and branch-data structures.

use std::path::Path;

use serde::{Deserialize, Serialize};

use persson::cover::{solve_line_bundles, BranchData, BranchLine, BuildingData};
use persson::gf2::GroupElement;
use persson::stability::{
    incidence_from_lines, ArrangementLine, ArrangementPoint, EpsRat, WeightedArrangement,
};
use persson::Rat;

use crate::CliError;

pub const ARRANGEMENT_SCHEMA: &str = "arrangement/1";

/// Wire format of an arrangement file. Lines are given either by exact
/// rational coefficient triples or by abstract incidences (1-based line
/// indices per multiple point). All numerals are strings of the form "±p/q"
/// or "±p"; floating-point numerals are rejected.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lines: Option<Vec<[String; 3]>>,
    /// Abstract incidences: for each point of multiplicity ≥ 2, the 1-based
    /// indices of the lines through it. Requires `n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incidences: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
}

/// Parse an exact rational of the form "±p/q" or "±p". Anything else —
/// including decimal points and exponents — is an input error.
pub fn parse_rational(s: &str) -> Result<Rat, CliError> {
    let bad = || CliError::Input(format!("not an exact rational \"±p/q\" or \"±p\": {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let parse_int = |t: &str| -> Result<num::BigInt, CliError> {
        let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<num::BigInt>().map_err(|_| bad())
    };
    let p = parse_int(num)?;
    let q = parse_int(den)?;
    if q == num::BigInt::from(0) {
        return Err(CliError::Input(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(p, q))
}

/// Parse a weight list given on the command line: either one rational
/// (uniform, `n` copies) or a comma-separated list of `n` rationals.
pub fn parse_weight_list(s: &str, n: usize) -> Result<Vec<Rat>, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() == 1 {
        let r = parse_rational(parts[0])?;
        return Ok(vec![r; n]);
    }
    if parts.len() != n {
        return Err(CliError::Input(format!(
            "expected 1 or {n} weights, got {}",
            parts.len()
        )));
    }
    parts.into_iter().map(parse_rational).collect()
}

impl ArrangementFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        let file: ArrangementFile = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("invalid arrangement JSON in {}: {e}", path.display())))?;
        if file.schema != ARRANGEMENT_SCHEMA {
            return Err(CliError::Input(format!(
                "unsupported schema {:?} (expected {ARRANGEMENT_SCHEMA:?})",
                file.schema
            )));
        }
        Ok(file)
    }

    /// Number of original (input) lines.
    pub fn line_count(&self) -> Result<usize, CliError> {
        match (&self.lines, &self.incidences, self.n) {
            (Some(ls), _, _) => Ok(ls.len()),
            (None, Some(_), Some(n)) => Ok(n),
            (None, Some(_), None) => Err(CliError::Input(
                "incidence-only files must carry the line count \"n\"".into(),
            )),
            (None, None, _) => Err(CliError::Input(
                "arrangement file needs either \"lines\" or \"incidences\"".into(),
            )),
        }
    }

    /// The weighted incidence structure. With coefficient triples, weights
    /// apply to the original lines and coincident copies must agree; with
    /// abstract incidences, every line is reduced.
    pub fn arrangement(&self) -> Result<WeightedArrangement, CliError> {
        let n = self.line_count()?;
        let weights: Vec<Rat> = match &self.weights {
            Some(ws) => {
                if ws.len() != n {
                    return Err(CliError::Input(format!(
                        "{} weights for {n} lines",
                        ws.len()
                    )));
                }
                ws.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?
            }
            None => vec![Rat::from_integer(1.into()); n],
        };
        if let Some(lines) = &self.lines {
            let mut triples = Vec::with_capacity(lines.len());
            for t in lines {
                triples.push([
                    parse_rational(&t[0])?,
                    parse_rational(&t[1])?,
                    parse_rational(&t[2])?,
                ]);
            }
            let arr = incidence_from_lines(&triples)
                .map_err(|e| CliError::Input(e.to_string()))?;
            // map input-line weights onto distinct lines, requiring that
            // coincident copies carry identical weights
            let mut per_distinct: Vec<Option<Rat>> = vec![None; arr.lines.len()];
            let mut distinct_of_input = Vec::with_capacity(triples.len());
            {
                // recompute the distinct-line index of each input line the
                // same way incidence_from_lines groups them
                let mut canon: Vec<[Rat; 3]> = Vec::new();
                for t in &triples {
                    let lead = t.iter().find(|x| !num::Zero::is_zero(*x)).ok_or_else(|| {
                        CliError::Input("zero coefficient triple".into())
                    })?;
                    let c = [&t[0] / lead, &t[1] / lead, &t[2] / lead];
                    let idx = canon.iter().position(|x| *x == c).unwrap_or_else(|| {
                        canon.push(c.clone());
                        canon.len() - 1
                    });
                    distinct_of_input.push(idx);
                }
            }
            for (i, &j) in distinct_of_input.iter().enumerate() {
                match &per_distinct[j] {
                    None => per_distinct[j] = Some(weights[i].clone()),
                    Some(w) if *w == weights[i] => {}
                    Some(_) => {
                        return Err(CliError::Input(format!(
                            "coincident copies of line {} carry different weights",
                            j + 1
                        )))
                    }
                }
            }
            let ws: Vec<EpsRat> = per_distinct
                .into_iter()
                .map(|w| EpsRat::from_rat(w.expect("every distinct line has an input line")))
                .collect();
            arr.with_weights(ws).map_err(|e| CliError::Input(e.to_string()))
        } else {
            let incidences = self.incidences.as_ref().expect("line_count checked");
            let lines: Vec<ArrangementLine> =
                (0..n).map(|id| ArrangementLine { id, multiplicity: 1 }).collect();
            let mut points = Vec::new();
            for (id, inc) in incidences.iter().enumerate() {
                let mut ls: Vec<usize> = Vec::new();
                for &i in inc {
                    if i == 0 || i > n {
                        return Err(CliError::Input(format!(
                            "incidence index {i} outside 1..={n}"
                        )));
                    }
                    if !ls.contains(&(i - 1)) {
                        ls.push(i - 1);
                    }
                }
                ls.sort_unstable();
                if ls.len() < 2 {
                    return Err(CliError::Input(format!(
                        "point {id} has fewer than two distinct lines"
                    )));
                }
                points.push(ArrangementPoint { id, lines: ls });
            }
            let ws: Vec<EpsRat> = weights.into_iter().map(EpsRat::from_rat).collect();
            WeightedArrangement::new(lines, points, ws)
                .map_err(|e| CliError::Input(e.to_string()))
        }
    }

    /// The branch data determined by the optional labels, if present.
    pub fn branch_data(&self) -> Result<Option<BranchData>, CliError> {
        let Some(labels) = &self.labels else { return Ok(None) };
        let n = self.line_count()?;
        if labels.len() != n {
            return Err(CliError::Input(format!(
                "{} labels for {n} lines",
                labels.len()
            )));
        }
        let parsed: Vec<GroupElement> = labels
            .iter()
            .map(|s| GroupElement::parse(s).map_err(|e| CliError::Input(e.to_string())))
            .collect::<Result<_, _>>()?;
        let m = parsed[0].m();
        if parsed.iter().any(|g| g.m() != m) {
            return Err(CliError::Input("labels have mixed lengths".into()));
        }
        let lines: Vec<BranchLine> = parsed
            .into_iter()
            .enumerate()
            .map(|(i, label)| BranchLine { label, line_id: i as u32 + 1, degree: 1 })
            .collect();
        BranchData::new(m, lines)
            .map(Some)
            .map_err(|e| CliError::Input(e.to_string()))
    }

    /// Labels parsed into group elements (order of the input lines).
    pub fn label_elements(&self) -> Result<Option<Vec<GroupElement>>, CliError> {
        Ok(self
            .branch_data()?
            .map(|b| b.lines.iter().map(|l| l.label).collect()))
    }

    /// Solve the building data of the labeled cover.
    pub fn building_data(&self) -> Result<Option<BuildingData>, CliError> {
        match self.branch_data()? {
            None => Ok(None),
            Some(b) => solve_line_bundles(&b)
                .map(Some)
                .map_err(|e| CliError::Input(e.to_string())),
        }
    }
}

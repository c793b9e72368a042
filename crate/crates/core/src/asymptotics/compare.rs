use serde::{Deserialize, Serialize};

use super::{a_weight, li, pair_main_term, ps_main_term, r2_main_term, sharp_local_term, AsymptoticModel};
use crate::census::Census;
use crate::counting::{Counter, PairQuery};
use crate::error::{Error, Result};
use crate::surface_group::HomologyVector;

/// Observed counter and the predictor it is compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryKind {
    /// π(x) against li(x).
    PiLi,
    /// π(x) against `(g−1)^g x / log^{g+1} x`.
    PiPs,
    /// π_β(x) against the Gaussian local term.
    PiBeta,
    /// R_β(x) against A(β, x).
    RBeta,
    /// π₂^β(x₁, x₂) against the pair main term.
    Pair,
    /// R₂^β(x₁, x₂) against its main term.
    R2,
    /// P₂^β(x₁, x₂) against the R₂ main term.
    P2,
    /// π₂^β(x₁, x₂) against `√(x₁x₂)/(16 log x₁ log x₂) · P₂^β(x₁, x₂)`.
    PairP2,
}

impl QueryKind {
    pub fn is_pair(self) -> bool {
        matches!(self, QueryKind::Pair | QueryKind::R2 | QueryKind::P2 | QueryKind::PairP2)
    }

    pub fn needs_beta(self) -> bool {
        !matches!(self, QueryKind::PiLi | QueryKind::PiPs)
    }

    pub fn name(self) -> &'static str {
        match self {
            QueryKind::PiLi => "pi_li",
            QueryKind::PiPs => "pi_ps",
            QueryKind::PiBeta => "pi_beta",
            QueryKind::RBeta => "r_beta",
            QueryKind::Pair => "pair",
            QueryKind::R2 => "r2",
            QueryKind::P2 => "p2",
            QueryKind::PairP2 => "pair_p2",
        }
    }
}

/// One comparison query as written in a query file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Query {
    pub kind: QueryKind,
    #[serde(default)]
    pub beta: Option<String>,
    #[serde(default)]
    pub x: Option<f64>,
    #[serde(default)]
    pub x1: Option<f64>,
    #[serde(default)]
    pub x2: Option<f64>,
    #[serde(default)]
    pub k: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QueryFile {
    #[serde(default)]
    query: Vec<Query>,
}

impl Query {
    pub fn single(kind: QueryKind, beta: Option<&HomologyVector>, x: f64) -> Self {
        Query {
            kind,
            beta: beta.map(|b| b.to_string()),
            x: Some(x),
            x1: None,
            x2: None,
            k: None,
        }
    }

    /// Parses a TOML document of `[[query]]` tables.
    pub fn parse_file(text: &str) -> Result<Vec<Query>> {
        let f: QueryFile = toml::from_str(text).map_err(|e| Error::InvalidQuery(e.to_string()))?;
        Ok(f.query)
    }

    fn cutoffs(&self) -> Result<(f64, Option<f64>)> {
        let kind = self.kind.name();
        if self.kind.is_pair() {
            match (self.x, self.x1, self.x2) {
                (Some(x), None, None) => Ok((x, Some(x))),
                (None, Some(a), Some(b)) => Ok((a, Some(b))),
                _ => Err(Error::InvalidQuery(format!("{kind}: give either x or both x1 and x2"))),
            }
        } else {
            match (self.x, self.x1, self.x2) {
                (Some(x), None, None) => Ok((x, None)),
                _ => Err(Error::InvalidQuery(format!("{kind}: give exactly x"))),
            }
        }
    }

    fn beta(&self, genus: usize) -> Result<Option<HomologyVector>> {
        match (&self.beta, self.kind.needs_beta()) {
            (Some(b), true) => HomologyVector::parse_for_genus(b, genus).map(Some),
            (None, true) => Ok(Some(HomologyVector::zero(genus))),
            (Some(_), false) => Err(Error::InvalidQuery(format!("{} takes no beta", self.kind.name()))),
            (None, false) => Ok(None),
        }
    }
}

/// One report row; `ratio` is absent when the prediction is zero.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub kind: QueryKind,
    pub beta: Option<HomologyVector>,
    pub x1: f64,
    pub x2: Option<f64>,
    pub observed: f64,
    pub predicted: f64,
    pub ratio: Option<f64>,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub representation: String,
    pub representation_id: String,
    pub word_length_bound: usize,
    pub completeness_length: Option<f64>,
    pub include_diagonal: bool,
    pub model: AsymptoticModel,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// CSV with one `# {json}` metadata line ahead of the header.
    pub fn to_csv(&self) -> String {
        let meta = serde_json::json!({
            "representation": self.representation,
            "representation_id": self.representation_id,
            "word_length_bound": self.word_length_bound,
            "completeness_length": self.completeness_length,
            "include_diagonal": self.include_diagonal,
            "model": self.model,
        });
        let mut out = format!("# {meta}\nkind,beta,x1,x2,observed,predicted,ratio,complete\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{:?},{},{:?},{:?},{},{}\n",
                r.kind.name(),
                r.beta.as_ref().map(|b| format!("\"{b}\"")).unwrap_or_default(),
                r.x1,
                r.x2.map(|x| format!("{x:?}")).unwrap_or_default(),
                r.observed,
                r.predicted,
                r.ratio.map(|x| format!("{x:?}")).unwrap_or_default(),
                r.complete
            ));
        }
        out
    }
}

/// Evaluates every query against the census and the model.
pub fn compare(counter: &Counter, model: &AsymptoticModel, queries: &[Query]) -> Result<ComparisonReport> {
    let census = counter.census();
    if model.genus != census.genus {
        return Err(Error::GenusMismatch {
            expected: census.genus,
            found: model.genus,
        });
    }
    let mut rows = Vec::with_capacity(queries.len());
    for q in queries {
        rows.push(row(counter, model, q)?);
    }
    Ok(ComparisonReport {
        representation: census.representation_name.clone(),
        representation_id: census.representation_id.clone(),
        word_length_bound: census.word_length_bound,
        completeness_length: census.completeness_length_f64(),
        include_diagonal: counter.options.include_diagonal,
        model: model.clone(),
        rows,
    })
}

fn row(counter: &Counter, model: &AsymptoticModel, q: &Query) -> Result<ComparisonRow> {
    let genus = counter.census().genus;
    let (x1, x2) = q.cutoffs()?;
    let beta = q.beta(genus)?;
    let b = beta.clone().unwrap_or_else(|| HomologyVector::zero(genus));
    let pair = match x2 {
        Some(x2) => Some(PairQuery::new(b.clone(), x1, x2, q.k.unwrap_or(0.5))?),
        None => {
            if !(x1 > 1.0) {
                return Err(Error::InvalidQuery(format!("cutoff x = {x1} must be > 1")));
            }
            None
        }
    };
    let (observed, predicted) = match (q.kind, &pair) {
        (QueryKind::PiLi, _) => (counter.pi(x1) as f64, li(x1)?),
        (QueryKind::PiPs, _) => (counter.pi(x1) as f64, ps_main_term(model, x1)?),
        (QueryKind::PiBeta, _) => (counter.pi_beta(&b, x1) as f64, sharp_local_term(model, &b, x1)?),
        (QueryKind::RBeta, _) => (counter.r_beta(&b, x1), a_weight(model, &b, x1)?),
        (QueryKind::Pair, Some(p)) => (counter.pair_count(p) as f64, pair_main_term(model, &b, p.x1, p.x2)?),
        (QueryKind::R2, Some(p)) => (counter.r2_beta(p), r2_main_term(model, &b, p.x1, p.x2)?),
        (QueryKind::P2, Some(p)) => (counter.p2_beta(p), r2_main_term(model, &b, p.x1, p.x2)?),
        (QueryKind::PairP2, Some(p)) => {
            let scale = (p.x1 * p.x2).sqrt() / (16.0 * p.x1.ln() * p.x2.ln());
            (counter.pair_count(p) as f64, scale * counter.p2_beta(p))
        }
        _ => unreachable!("pair kinds always carry a PairQuery"),
    };
    Ok(ComparisonRow {
        kind: q.kind,
        beta,
        x1,
        x2,
        observed,
        predicted,
        ratio: (predicted != 0.0).then(|| observed / predicted),
        complete: counter.is_complete(x1.max(x2.unwrap_or(x1))),
    })
}

/// Queries at the three largest complete dyadic cutoffs covering every
/// predictor pairing.
pub fn default_queries(census: &Census) -> Vec<Query> {
    let genus = census.genus;
    let top = census
        .completeness_length_f64()
        .map(|l| l / std::f64::consts::LN_2)
        .unwrap_or(2.0)
        .floor()
        .max(3.0);
    let zero = HomologyVector::zero(genus);
    let e1 = HomologyVector::unit(genus, 0);
    let mut out = Vec::new();
    for p in [top - 2.0, top - 1.0, top] {
        let x = p.exp2();
        out.push(Query::single(QueryKind::PiLi, None, x));
        out.push(Query::single(QueryKind::PiPs, None, x));
        for b in [&zero, &e1] {
            out.push(Query::single(QueryKind::PiBeta, Some(b), x));
            out.push(Query::single(QueryKind::RBeta, Some(b), x));
            out.push(Query::single(QueryKind::Pair, Some(b), x));
            out.push(Query::single(QueryKind::R2, Some(b), x));
            out.push(Query::single(QueryKind::P2, Some(b), x));
            out.push(Query::single(QueryKind::PairP2, Some(b), x));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::enumerate;
    use crate::hyperbolic::Representation;

    #[test]
    fn report_shapes() {
        let c = enumerate(&Representation::bolza(128).unwrap(), 4).unwrap();
        let k = Counter::new(&c);
        let m = AsymptoticModel::default_for_genus(2);
        let qs = default_queries(&c);
        let r = compare(&k, &m, &qs).unwrap();
        assert_eq!(r.rows.len(), qs.len());
        assert!(r.rows.iter().filter(|r| r.predicted > 0.0).all(|r| r.ratio.unwrap().is_finite()));
        assert_eq!(r.to_csv().lines().count(), qs.len() + 2);
        let empty = compare(&k, &m, &Query::parse_file("").unwrap()).unwrap();
        assert!(empty.rows.is_empty());
        let far = Query::single(QueryKind::PiLi, None, 1e9);
        assert!(!compare(&k, &m, &[far]).unwrap().rows[0].complete);
    }

    #[test]
    fn query_file() {
        let text = r#"
[[query]]
kind = "pair"
beta = "1,0,0,0"
x1 = 100.0
x2 = 200.0

[[query]]
kind = "pi_li"
x = 50.0
"#;
        let qs = Query::parse_file(text).unwrap();
        assert_eq!(qs.len(), 2);
        assert_eq!(qs[0].cutoffs().unwrap(), (100.0, Some(200.0)));
        assert!(Query::parse_file("[[query]]\nkind = \"bogus\"\nx = 3.0").is_err());
        let bad = Query { beta: Some("1,2".into()), ..qs[0].clone() };
        assert!(bad.beta(2).is_err());
    }
}

//! Deterministic JSON and text forms of operators.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{symbol_to_operator, DiffOperator, OpParams, SbdoError};
use crate::exactalg::{var_names, MultiPoly, RatMatrix, Scalar};
use crate::jordan::Frame;
use crate::pluriharm::Provenance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?} (expected json or text)")),
        }
    }
}

/// `y1 .. yn` in the f-basis, `x0 .. x{n-1}` otherwise.
pub fn coord_names(frame: Frame, n: usize) -> Vec<String> {
    match frame {
        Frame::FBasis => var_names("y", 1, n),
        Frame::Original => var_names("x", 0, n),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorDocument {
    pub frame: Frame,
    pub gram: Vec<Vec<Scalar>>,
    pub symbol: BTreeMap<String, Scalar>,
    pub params: Option<OpParams>,
    pub coeff_provenance: Option<Provenance>,
}

impl OperatorDocument {
    pub fn from_operator(d: &DiffOperator) -> Self {
        let names = coord_names(d.frame, d.dim());
        OperatorDocument {
            frame: d.frame,
            gram: (0..d.gram.rows()).map(|i| d.gram.row(i).to_vec()).collect(),
            symbol: d.symbol.terms().map(|(e, c)| (MultiPoly::monomial_key(e, &names), c.clone())).collect(),
            params: d.params.clone(),
            coeff_provenance: d.coeff_provenance,
        }
    }

    pub fn to_operator(&self) -> Result<DiffOperator, SbdoError> {
        let n = self.gram.len();
        if self.gram.iter().any(|r| r.len() != n) {
            return Err(SbdoError::Document("Gram matrix is not square".into()));
        }
        let names = coord_names(self.frame, n);
        let mut q = MultiPoly::zero(n);
        for (k, c) in &self.symbol {
            q.add_term(MultiPoly::parse_monomial_key(k, &names)?, c.clone());
        }
        let gram = if n == 0 { RatMatrix::zeros(0, 0) } else { RatMatrix::from_rows(self.gram.clone()) };
        let mut d = symbol_to_operator(&q, &gram, self.frame)?;
        d.params = self.params.clone();
        d.coeff_provenance = self.coeff_provenance;
        Ok(d)
    }
}

fn provenance_str(p: Option<Provenance>) -> &'static str {
    match p {
        Some(Provenance::ClosedForm) => "closed_form",
        Some(Provenance::Recurrence) => "recurrence",
        Some(Provenance::Nullspace) => "nullspace",
        None => "none",
    }
}

pub fn emit_operator(d: &DiffOperator, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&OperatorDocument::from_operator(d))
            .expect("operator documents serialize"),
        Format::Text => {
            let names = coord_names(d.frame, d.dim());
            let dnames: Vec<String> = names.iter().map(|n| format!("d/d{n}")).collect();
            let mut s = String::new();
            let _ = writeln!(s, "frame: {}", d.frame.as_str());
            let gram: Vec<String> = (0..d.gram.rows())
                .map(|i| d.gram.row(i).iter().map(Scalar::to_string).collect::<Vec<_>>().join(" "))
                .collect();
            let _ = writeln!(s, "gram: [{}]", gram.join("; "));
            let _ = writeln!(s, "symbol: {}", d.symbol.display_with(&names));
            let _ = writeln!(s, "operator: {}", d.derivative_poly().display_with(&dnames));
            if let Some(p) = &d.params {
                let _ = writeln!(s, "params: n={} m={} p={}", p.n, p.m, p.p);
            }
            let _ = writeln!(s, "coeff_provenance: {}", provenance_str(d.coeff_provenance));
            s
        }
    }
}

pub fn parse_operator(json: &str) -> Result<DiffOperator, SbdoError> {
    let doc: OperatorDocument = serde_json::from_str(json).map_err(|e| SbdoError::Document(e.to_string()))?;
    doc.to_operator()
}

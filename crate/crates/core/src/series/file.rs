//! JSON coefficient files: `{"valuation": v, "order": n, "coeffs": [{"re": "p/q", "im": "p/q"}, ...]}`.

use serde::{Deserialize, Serialize};

use crate::error::{GenusError, Result};
use crate::gaussian::{parse_rational, GaussianRational};
use crate::series::LaurentSeries;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffRecord {
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesFile {
    pub valuation: i64,
    pub order: i64,
    pub coeffs: Vec<CoeffRecord>,
}

impl SeriesFile {
    pub fn from_series(s: &LaurentSeries<GaussianRational>) -> Self {
        let coeffs = s
            .coeffs()
            .iter()
            .map(|c| CoeffRecord { re: c.re.to_string(), im: c.im.to_string() })
            .collect();
        Self { valuation: s.valuation(), order: s.order(), coeffs }
    }

    pub fn to_series(&self) -> Result<LaurentSeries<GaussianRational>> {
        let expected = (self.order - self.valuation + 1).max(0) as usize;
        if self.coeffs.len() != expected {
            return Err(GenusError::Parse(format!(
                "series file declares valuation {} and order {} but lists {} coefficients",
                self.valuation,
                self.order,
                self.coeffs.len()
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| Ok(GaussianRational::new(parse_rational(&c.re)?, parse_rational(&c.im)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentSeries::with_order(self.valuation, coeffs, self.order))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("series file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| GenusError::Parse(e.to_string()))
    }
}

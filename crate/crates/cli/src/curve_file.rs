//! JSON curve files: `{"degree": n, "dimension": d, "control_points": [[..], ..]}`.

use std::fs;
use std::path::Path;

use glcurve_core::GlCurve;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub degree: usize,
    pub dimension: usize,
    pub control_points: Vec<Vec<f64>>,
}

impl CurveFile {
    pub fn into_curve(self) -> Result<GlCurve, CliError> {
        if self.control_points.len() != self.degree + 1 {
            return Err(CliError::Input(format!(
                "degree {} needs {} control points, file has {}",
                self.degree,
                self.degree + 1,
                self.control_points.len()
            )));
        }
        if let Some(j) = self
            .control_points
            .iter()
            .position(|p| p.len() != self.dimension)
        {
            return Err(CliError::Input(format!(
                "control point {j} has {} coordinates, dimension is {}",
                self.control_points[j].len(),
                self.dimension
            )));
        }
        GlCurve::new(self.degree, self.dimension, self.control_points.concat())
            .map_err(|e| CliError::Input(e.to_string()))
    }
}

pub fn read_curve(path: &Path) -> Result<GlCurve, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let file: CurveFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    file.into_curve()
}

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::Serialize;

use super::BaselineError;

pub const DEFAULT_SIDE: usize = 32;

/// Fixed-length image descriptor for one study.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FeatureVector {
    pub study_id: String,
    pub values: Vec<f64>,
}

impl FeatureVector {
    pub fn new(study_id: impl Into<String>, values: Vec<f64>) -> FeatureVector {
        FeatureVector {
            study_id: study_id.into(),
            values,
        }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn squared_distance(&self, other: &FeatureVector) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }
}

pub type FeatureMap = BTreeMap<String, FeatureVector>;

/// Row-major grayscale image with intensities in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<f64>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> GrayImage {
        assert_eq!(
            pixels.len(),
            width * height,
            "pixel buffer does not match dimensions"
        );
        GrayImage {
            width,
            height,
            pixels,
        }
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> f64) -> GrayImage {
        let pixels = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        GrayImage::new(width, height, pixels)
    }

    pub fn at(&self, x: usize, y: usize) -> f64 {
        self.pixels[y * self.width + x]
    }
}

/// Block bounds `[lo, hi)` of output cell `i` when mapping `len` inputs onto `side` cells.
/// Smaller inputs repeat pixels.
fn block(i: usize, len: usize, side: usize) -> (usize, usize) {
    let lo = i * len / side;
    let hi = ((i + 1) * len / side).max(lo + 1);
    (lo, hi)
}

/// Average-pools to `side × side`, flattens row-major and L2-normalizes.
/// An all-zero image gives the zero vector.
pub fn extract_features(image: &GrayImage, side: usize) -> Result<Vec<f64>, BaselineError> {
    if image.width == 0 || image.height == 0 || side == 0 {
        return Err(BaselineError::EmptyImage);
    }
    if let Some(&bad) = image.pixels.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(BaselineError::InvalidPixel(bad));
    }

    let mut values = Vec::with_capacity(side * side);
    for row in 0..side {
        let (y0, y1) = block(row, image.height, side);
        for col in 0..side {
            let (x0, x1) = block(col, image.width, side);
            let mut sum = 0.0;
            for y in y0..y1 {
                for x in x0..x1 {
                    sum += image.at(x, y);
                }
            }
            values.push(sum / ((y1 - y0) * (x1 - x0)) as f64);
        }
    }

    let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in &mut values {
            *v /= norm;
        }
    }
    Ok(values)
}

/// Reads `study_id,v0,…,v{d-1}` rows. The header row fixes the dimension.
pub fn read_feature_csv(reader: impl Read) -> Result<FeatureMap, BaselineError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);
    let dim = rdr
        .headers()
        .map_err(|e| BaselineError::FeatureFile(e.to_string()))?
        .len()
        .saturating_sub(1);
    if dim == 0 {
        return Err(BaselineError::FeatureFile(
            "header has no value columns".into(),
        ));
    }
    let mut out = FeatureMap::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| BaselineError::FeatureFile(e.to_string()))?;
        let study_id = row.get(0).unwrap_or_default().to_string();
        if row.len() != dim + 1 {
            return Err(BaselineError::DimensionMismatch {
                study_id,
                expected: dim,
                found: row.len().saturating_sub(1),
            });
        }
        let values = row
            .iter()
            .skip(1)
            .map(|v| v.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| BaselineError::FeatureFile(format!("row {}: {e}", i + 2)))?;
        if values.iter().any(|v| !v.is_finite()) {
            return Err(BaselineError::FeatureFile(format!(
                "row {}: non-finite value",
                i + 2
            )));
        }
        if out.contains_key(&study_id) {
            return Err(BaselineError::FeatureFile(format!(
                "duplicate study_id `{study_id}`"
            )));
        }
        out.insert(study_id.clone(), FeatureVector::new(study_id, values));
    }
    Ok(out)
}

pub fn write_feature_csv<'a>(
    writer: impl Write,
    features: impl IntoIterator<Item = &'a FeatureVector>,
) -> Result<(), BaselineError> {
    let io_err = |e: csv::Error| BaselineError::FeatureFile(e.to_string());
    let mut wtr = csv::Writer::from_writer(writer);
    let mut dim: Option<usize> = None;
    for fv in features {
        match dim {
            None => {
                let mut header = vec!["study_id".to_string()];
                header.extend((0..fv.dim()).map(|i| format!("v{i}")));
                wtr.write_record(&header).map_err(io_err)?;
                dim = Some(fv.dim());
            }
            Some(d) if d != fv.dim() => {
                return Err(BaselineError::DimensionMismatch {
                    study_id: fv.study_id.clone(),
                    expected: d,
                    found: fv.dim(),
                })
            }
            Some(_) => {}
        }
        let mut row = vec![fv.study_id.clone()];
        row.extend(fv.values.iter().map(|v| format!("{v}")));
        wtr.write_record(&row).map_err(io_err)?;
    }
    wtr.flush()
        .map_err(|e| BaselineError::FeatureFile(e.to_string()))
}

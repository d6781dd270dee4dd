//! PLY, CSV and PNG output of point clouds, plus the JSON run metadata.

use std::fmt;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use super::{north_pole, stereographic, LimitSetError, PointCloud, DRIFT_BOUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Ply,
    Csv,
    Png,
}

impl ExportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            Self::Ply => "ply",
            Self::Csv => "csv",
            Self::Png => "png",
        }
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

impl FromStr for ExportFormat {
    type Err = LimitSetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ply" => Ok(Self::Ply),
            "csv" => Ok(Self::Csv),
            "png" => Ok(Self::Png),
            _ => Err(LimitSetError::Argument(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExportOptions {
    /// Pole for the PLY projection; the north pole `e_d` when unset.
    pub pole: Option<Vec<f64>>,
    /// Side of the square PNG in pixels.
    pub resolution: u32,
    /// Coordinates plotted horizontally and vertically in the PNG.
    pub axes: (usize, usize),
}

impl Default for ExportOptions {
    fn default() -> Self {
        Self { pole: None, resolution: 1024, axes: (0, 1) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExportSummary {
    pub format: ExportFormat,
    pub points_written: usize,
    pub dropped_near_pole: usize,
    pub bytes: usize,
}

/// Binary little-endian PLY with one `double` triple per point: the stereographic image of
/// the cloud from the pole, truncated to its first three coordinates on spheres of
/// dimension above 3. Clouds on `S^1` or `S^2` are written as they are, padded with zeros.
pub fn ply_bytes(cloud: &PointCloud, opts: &ExportOptions) -> Result<(Vec<u8>, usize), LimitSetError> {
    let (coords, dropped): (Vec<Vec<f64>>, usize) = if cloud.dim <= 3 {
        (cloud.points.clone(), 0)
    } else {
        let pole = opts.pole.clone().unwrap_or_else(|| north_pole(cloud.dim));
        if pole.len() != cloud.dim {
            return Err(LimitSetError::Argument(format!("pole has {} coordinates, expected {}", pole.len(), cloud.dim)));
        }
        let norm = pole.iter().map(|a| a * a).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(LimitSetError::Argument("pole must be non-zero".into()));
        }
        let pole: Vec<f64> = pole.iter().map(|a| a / norm).collect();
        let s = stereographic(&cloud.points, &pole);
        (s.points, s.dropped.len())
    };
    let mut out = format!(
        "ply\nformat binary_little_endian 1.0\ncomment group {} depth {}\nelement vertex {}\nproperty double x\nproperty double y\nproperty double z\nend_header\n",
        cloud.metadata.group,
        cloud.metadata.max_len,
        coords.len()
    )
    .into_bytes();
    for p in &coords {
        for k in 0..3 {
            out.extend_from_slice(&p.get(k).copied().unwrap_or(0.0).to_le_bytes());
        }
    }
    Ok((out, dropped))
}

/// Header `x1,...,xd,word_length`, one row per point, shortest round-trip decimals.
pub fn csv_bytes(cloud: &PointCloud) -> Vec<u8> {
    let mut s = String::new();
    for k in 1..=cloud.dim {
        write!(s, "x{k},").unwrap();
    }
    s.push_str("word_length\n");
    for (p, l) in cloud.points.iter().zip(&cloud.word_length) {
        for x in p {
            write!(s, "{x},").unwrap();
        }
        writeln!(s, "{l}").unwrap();
    }
    s.into_bytes()
}

/// Grayscale orthographic projection onto two coordinate axes. The square `[-1, 1]^2`
/// fills the image; brightness grows with the number of points per pixel.
pub fn png_bytes(cloud: &PointCloud, opts: &ExportOptions) -> Result<Vec<u8>, LimitSetError> {
    let r = opts.resolution;
    let (a, b) = opts.axes;
    if r == 0 || r > 16384 {
        return Err(LimitSetError::Argument(format!("resolution {r} outside 1..=16384")));
    }
    if a == b || a >= cloud.dim || b >= cloud.dim {
        return Err(LimitSetError::Argument(format!("axes ({a}, {b}) invalid for dimension {}", cloud.dim)));
    }
    let side = r as usize;
    let mut hits = vec![0u32; side * side];
    let scale = (side - 1) as f64 / 2.0;
    for p in &cloud.points {
        let col = ((p[a] + 1.0) * scale).round().clamp(0.0, (side - 1) as f64) as usize;
        let row = ((1.0 - p[b]) * scale).round().clamp(0.0, (side - 1) as f64) as usize;
        hits[row * side + col] += 1;
    }
    let data: Vec<u8> = hits.iter().map(|&h| if h == 0 { 0 } else { (95 + 32 * h.min(5)) as u8 }).collect();
    let mut out = Vec::new();
    {
        let mut enc = png::Encoder::new(&mut out, r, r);
        enc.set_color(png::ColorType::Grayscale);
        enc.set_depth(png::BitDepth::Eight);
        let mut w = enc.write_header().expect("writing to memory");
        w.write_image_data(&data).expect("writing to memory");
    }
    Ok(out)
}

/// Writes `cloud` to `path` in `format`.
pub fn export(cloud: &PointCloud, format: ExportFormat, path: &Path, opts: &ExportOptions) -> Result<ExportSummary, LimitSetError> {
    let (bytes, dropped) = match format {
        ExportFormat::Ply => ply_bytes(cloud, opts)?,
        ExportFormat::Csv => (csv_bytes(cloud), 0),
        ExportFormat::Png => (png_bytes(cloud, opts)?, 0),
    };
    std::fs::write(path, &bytes)?;
    Ok(ExportSummary { format, points_written: cloud.len() - dropped, dropped_near_pole: dropped, bytes: bytes.len() })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunMetadata<'a> {
    pub group: &'a str,
    pub depth: usize,
    pub dedup_eps: f64,
    pub basepoint: &'a [f64],
    pub words_per_length: &'a [u64],
    pub points_per_length: &'a [u64],
    pub pruned: u64,
    pub count: usize,
    pub max_point_drift: f64,
    pub max_generator_drift: f64,
    pub drift_bound: f64,
    pub export: &'a ExportSummary,
    pub options: &'a ExportOptions,
    pub wall_time_s: f64,
}

/// Sidecar JSON for a rendered cloud.
pub fn metadata_json(cloud: &PointCloud, summary: &ExportSummary, opts: &ExportOptions, wall_time_s: f64) -> String {
    let m = &cloud.metadata;
    let meta = RunMetadata {
        group: &m.group,
        depth: m.max_len,
        dedup_eps: m.dedup_eps,
        basepoint: &m.basepoint,
        words_per_length: &m.words_per_length,
        points_per_length: &m.points_per_length,
        pruned: m.pruned,
        count: m.count,
        max_point_drift: m.max_point_drift,
        max_generator_drift: m.max_generator_drift,
        drift_bound: DRIFT_BOUND,
        export: summary,
        options: opts,
        wall_time_s,
    };
    serde_json::to_string_pretty(&meta).expect("metadata serializes")
}

#[cfg(test)]
mod tests {
    use super::super::{CloudMetadata, PointCloud};
    use super::*;

    fn cloud(points: Vec<Vec<f64>>) -> PointCloud {
        let n = points.len();
        PointCloud {
            dim: 4,
            word_length: vec![1; n],
            points,
            metadata: CloudMetadata {
                group: "test".into(),
                max_len: 1,
                dedup_eps: 1e-7,
                basepoint: vec![0.0, 0.0, 0.0, 0.0, 1.0],
                words_per_length: vec![1],
                points_per_length: vec![1],
                pruned: 0,
                count: n,
                max_point_drift: 0.0,
                max_generator_drift: 0.0,
            },
        }
    }

    fn header_count(bytes: &[u8]) -> usize {
        let text = String::from_utf8_lossy(&bytes[..bytes.len().min(400)]).to_string();
        let line = text.lines().find(|l| l.starts_with("element vertex")).unwrap();
        line.rsplit(' ').next().unwrap().parse().unwrap()
    }

    #[test]
    fn empty_cloud() {
        let c = cloud(vec![]);
        let (ply, _) = ply_bytes(&c, &ExportOptions::default()).unwrap();
        assert_eq!(header_count(&ply), 0);
        assert!(ply.ends_with(b"end_header\n"));
        assert_eq!(csv_bytes(&c), b"x1,x2,x3,x4,word_length\n");
        assert!(png_bytes(&c, &ExportOptions { resolution: 8, ..Default::default() }).unwrap().starts_with(b"\x89PNG"));
    }

    #[test]
    fn three_points() {
        let c = cloud(vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0], vec![0.0, 0.0, 0.0, -1.0]]);
        let (ply, dropped) = ply_bytes(&c, &ExportOptions::default()).unwrap();
        assert_eq!((header_count(&ply), dropped), (3, 0));
        let body = &ply[ply.len() - 72..];
        assert_eq!(f64::from_le_bytes(body[..8].try_into().unwrap()), 1.0);
        let north = cloud(vec![vec![0.0, 0.0, 0.0, 1.0]]);
        assert_eq!(ply_bytes(&north, &ExportOptions::default()).unwrap().1, 1);
    }

    #[test]
    fn unwritable_path() {
        let c = cloud(vec![]);
        let r = export(&c, ExportFormat::Csv, Path::new("/nonexistent-dir/x/y.csv"), &ExportOptions::default());
        assert!(matches!(r, Err(LimitSetError::Io(_))));
    }

    #[test]
    fn bad_png_options() {
        let c = cloud(vec![]);
        assert!(png_bytes(&c, &ExportOptions { axes: (1, 1), ..Default::default() }).is_err());
        assert!(png_bytes(&c, &ExportOptions { resolution: 0, ..Default::default() }).is_err());
    }
}

//! CSV rendering and atomic file output.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use decoherence_core::diffusion::DiffusionSeries;
use decoherence_core::model::CaseId;
use decoherence_core::numerics::TimeSeries;

use crate::error::{CliError, Result};

pub const DIFFUSION_HEADER: &str = "t,case,method,D";
pub const GAMMA_HEADER: &str = "t,case,Gamma";

/// Shortest round-trip decimal, in exponent form outside `[1e−4, 1e15)`;
/// non-finite values become an empty field.
pub fn field(x: f64) -> String {
    if !x.is_finite() {
        String::new()
    } else if x == 0.0 || (1e-4..1e15).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Rows of `t,case,method,D`, grouped by case and interleaving the
/// methods at each grid point. All series of a case share one grid.
pub fn diffusion_rows(out: &mut String, series: &[DiffusionSeries]) {
    let mut k = 0;
    while k < series.len() {
        let case = series[k].case;
        let group: Vec<&DiffusionSeries> = series[k..].iter().take_while(|s| s.case == case).collect();
        k += group.len();
        for i in 0..group[0].series.len() {
            let t = group[0].series.time(i);
            for s in &group {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    field(t),
                    case,
                    s.method,
                    field(s.series.values()[i])
                );
            }
        }
    }
}

pub fn gamma_rows(out: &mut String, case: CaseId, gamma: &TimeSeries) {
    for (t, g) in gamma.iter() {
        let _ = writeln!(out, "{},{},{}", field(t), case, field(g));
    }
}

/// Writes `contents` to a sibling temporary file and renames it over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(contents.as_bytes())
        .and_then(|_| tmp.flush())
        .map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

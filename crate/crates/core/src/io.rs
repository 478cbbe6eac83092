//! Plain-text numeric file formats.
//!
//! Every format is line-oriented with `#`-prefixed headers and
//! full-precision decimal floats (shortest round-trip representation), so
//! files are diff-able and identical runs produce identical bytes.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::radon::{AngularSector, Sinogram};
use crate::specext::{EvalGrid, Field, SpectralSamples, SpectralWindow, WindowShape};
use crate::stablediff::{DiffReport, SampledSignal};

fn parse<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::Parse { line, msg: format!("cannot parse {what} from '{tok}'") })
}

fn tokens_of(content: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

// ---------------------------------------------------------------- signals

/// `# x0 dx period delta` then one value per line.
pub fn signal_to_string(s: &SampledSignal) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {} {} {} {}", s.x0(), s.dx(), s.period(), s.delta());
    for v in s.values() {
        let _ = writeln!(out, "{v}");
    }
    out
}

pub fn signal_from_str(content: &str) -> Result<SampledSignal> {
    let mut header: Option<(f64, f64, f64, f64)> = None;
    let mut values = Vec::new();
    for (line, toks) in tokens_of(content) {
        if toks[0] == "#" || toks[0].starts_with('#') {
            let toks: Vec<&str> = if toks[0] == "#" {
                toks[1..].to_vec()
            } else {
                let mut t = vec![&toks[0][1..]];
                t.extend_from_slice(&toks[1..]);
                t
            };
            if header.is_some() {
                continue; // trailing comments are allowed
            }
            if toks.len() != 4 {
                return Err(Error::Parse {
                    line,
                    msg: format!("signal header needs 4 fields (x0 dx period delta), got {}", toks.len()),
                });
            }
            header = Some((
                parse(toks[0], line, "x0")?,
                parse(toks[1], line, "dx")?,
                parse(toks[2], line, "period")?,
                parse(toks[3], line, "delta")?,
            ));
        } else {
            if toks.len() != 1 {
                return Err(Error::Parse { line, msg: "expected one value per line".into() });
            }
            values.push(parse(toks[0], line, "sample value")?);
        }
    }
    let (x0, dx, period, delta) =
        header.ok_or(Error::Parse { line: 1, msg: "missing signal header".into() })?;
    let signal = SampledSignal::new(values, x0, dx, delta)?;
    if (signal.period() - period).abs() > 1e-9 * period.abs().max(1.0) {
        return Err(Error::Parse {
            line: 1,
            msg: format!(
                "header period {period} does not match len * dx = {}",
                signal.period()
            ),
        });
    }
    Ok(signal)
}

// ------------------------------------------------------------ diff report

/// `# bound=... h_used=...` plus `x derivative` rows.
pub fn diff_report_to_string(signal: &SampledSignal, report: &DiffReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# bound={} h_used={}", report.bound, report.h_used);
    let _ = writeln!(
        out,
        "# h_ideal={} snapping_slack={}",
        report.h_ideal, report.snapping_slack
    );
    for (i, d) in report.derivative.iter().enumerate() {
        let _ = writeln!(out, "{} {}", signal.grid_x(i), d);
    }
    out
}

// -------------------------------------------------------- spectral samples

fn window_header(w: &SpectralWindow, meta: &[usize]) -> String {
    match w.shape() {
        WindowShape::Interval { lo, hi } => {
            format!("# 1 interval {lo} {hi} {} {}", meta[0], meta[1])
        }
        WindowShape::Box2 { lo, hi } => format!(
            "# 2 box {} {} {} {} {} {}",
            lo[0], lo[1], hi[0], hi[1], meta[0], meta[1]
        ),
        WindowShape::Ball { center, radius } => format!(
            "# 2 ball {} {} {radius} {} {}",
            center[0], center[1], meta[0], meta[1]
        ),
        WindowShape::Cone { alpha_min, alpha_max, t_max } => {
            let n_alpha = w.cone_layout().map(|(a, _)| a.len()).unwrap_or(0);
            format!(
                "# 2 cone {alpha_min} {alpha_max} {n_alpha} {t_max} {} {}",
                meta[0], meta[1]
            )
        }
    }
}

/// `# dim shape params...` then `xi_coords... re im` per quadrature node.
///
/// `meta` carries the two resolution parameters the window was built with
/// (panels/nodes, or radial/angular counts) so the reader can rebuild the
/// identical quadrature.
pub fn samples_to_string(samples: &SpectralSamples, meta: &[usize; 2]) -> String {
    let w = samples.window();
    let mut out = String::new();
    let _ = writeln!(out, "{}", window_header(w, meta));
    for (node, v) in w.nodes().iter().zip(samples.values()) {
        if w.dim() == 1 {
            let _ = writeln!(out, "{} {} {}", node[0], v.re, v.im);
        } else {
            let _ = writeln!(out, "{} {} {} {}", node[0], node[1], v.re, v.im);
        }
    }
    out
}

pub fn samples_from_str(content: &str) -> Result<SpectralSamples> {
    let mut lines = tokens_of(content);
    let (hline, htoks) = lines
        .next()
        .ok_or(Error::Parse { line: 1, msg: "empty spectral sample file".into() })?;
    if htoks[0] != "#" {
        return Err(Error::Parse { line: hline, msg: "missing '# dim shape ...' header".into() });
    }
    let h = &htoks[1..];
    let window = match (h.first().copied(), h.get(1).copied()) {
        (Some("1"), Some("interval")) => {
            if h.len() != 6 {
                return Err(Error::Parse { line: hline, msg: "interval header needs 4 params".into() });
            }
            SpectralWindow::interval(
                parse(h[2], hline, "lo")?,
                parse(h[3], hline, "hi")?,
                parse(h[4], hline, "n_panels")?,
                parse(h[5], hline, "n_nodes")?,
            )?
        }
        (Some("2"), Some("box")) => {
            if h.len() != 8 {
                return Err(Error::Parse { line: hline, msg: "box header needs 6 params".into() });
            }
            SpectralWindow::box2(
                [parse(h[2], hline, "x0")?, parse(h[3], hline, "y0")?],
                [parse(h[4], hline, "x1")?, parse(h[5], hline, "y1")?],
                parse(h[6], hline, "n_panels")?,
                parse(h[7], hline, "n_nodes")?,
            )?
        }
        (Some("2"), Some("ball")) => {
            if h.len() != 7 {
                return Err(Error::Parse { line: hline, msg: "ball header needs 5 params".into() });
            }
            SpectralWindow::ball(
                [parse(h[2], hline, "cx")?, parse(h[3], hline, "cy")?],
                parse(h[4], hline, "radius")?,
                parse(h[5], hline, "n_r")?,
                parse(h[6], hline, "n_phi")?,
            )?
        }
        (Some("2"), Some("cone")) => {
            if h.len() != 8 {
                return Err(Error::Parse { line: hline, msg: "cone header needs 6 params".into() });
            }
            let alpha_min: f64 = parse(h[2], hline, "alpha_min")?;
            let alpha_max: f64 = parse(h[3], hline, "alpha_max")?;
            let n_alpha: usize = parse(h[4], hline, "n_alpha")?;
            let sector = AngularSector::new(alpha_min, alpha_max, n_alpha)?;
            SpectralWindow::cone(
                &sector.angles(),
                parse(h[5], hline, "t_max")?,
                parse(h[6], hline, "t_panels")?,
                parse(h[7], hline, "t_nodes")?,
            )?
        }
        _ => {
            return Err(Error::Parse {
                line: hline,
                msg: format!("unknown window header '{}'", h.join(" ")),
            })
        }
    };
    let dim = window.dim();
    let mut values = Vec::new();
    let mut idx = 0usize;
    for (line, toks) in lines {
        if toks[0].starts_with('#') {
            continue;
        }
        let expect = dim + 2;
        if toks.len() != expect {
            return Err(Error::Parse {
                line,
                msg: format!("expected {expect} columns, got {}", toks.len()),
            });
        }
        if idx >= window.len() {
            return Err(Error::Parse {
                line,
                msg: format!("more rows than the window's {} quadrature nodes", window.len()),
            });
        }
        let node = window.nodes()[idx];
        for k in 0..dim {
            let coord: f64 = parse(toks[k], line, "node coordinate")?;
            if (coord - node[k]).abs() > 1e-9 * (1.0 + node[k].abs()) {
                return Err(Error::Config(format!(
                    "line {line}: node coordinate {coord} does not match window quadrature \
                     node {} (row {idx}); samples must sit exactly on the window nodes",
                    node[k]
                )));
            }
        }
        values.push(Complex64::new(
            parse(toks[dim], line, "re")?,
            parse(toks[dim + 1], line, "im")?,
        ));
        idx += 1;
    }
    SpectralSamples::new(window, values)
}

// ----------------------------------------------------------------- fields

/// `# nx ny x0 y0 dx dy` then row-major `re im` pairs.
pub fn field_to_string(field: &Field) -> String {
    let g = &field.grid;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {} {} {} {} {} {}",
        g.shape[0], g.shape[1], g.origin[0], g.origin[1], g.dx[0], g.dx[1]
    );
    for v in &field.values {
        let _ = writeln!(out, "{} {}", v.re, v.im);
    }
    out
}

pub fn field_from_str(content: &str) -> Result<Field> {
    let mut lines = tokens_of(content);
    let (hline, htoks) = lines
        .next()
        .ok_or(Error::Parse { line: 1, msg: "empty field file".into() })?;
    if htoks[0] != "#" || htoks.len() != 7 {
        return Err(Error::Parse {
            line: hline,
            msg: "field header must be '# nx ny x0 y0 dx dy'".into(),
        });
    }
    let nx: usize = parse(htoks[1], hline, "nx")?;
    let ny: usize = parse(htoks[2], hline, "ny")?;
    let grid = EvalGrid {
        dim: if ny == 1 { 1 } else { 2 },
        origin: [parse(htoks[3], hline, "x0")?, parse(htoks[4], hline, "y0")?],
        dx: [parse(htoks[5], hline, "dx")?, parse(htoks[6], hline, "dy")?],
        shape: [nx, ny],
    };
    let mut values = Vec::with_capacity(nx * ny);
    for (line, toks) in lines {
        if toks[0].starts_with('#') {
            continue;
        }
        if toks.len() != 2 {
            return Err(Error::Parse { line, msg: "expected 're im' per line".into() });
        }
        values.push(Complex64::new(
            parse(toks[0], line, "re")?,
            parse(toks[1], line, "im")?,
        ));
    }
    if values.len() != nx * ny {
        return Err(Error::Parse {
            line: 1,
            msg: format!("expected {} values, got {}", nx * ny, values.len()),
        });
    }
    Ok(Field { grid, values })
}

// --------------------------------------------------------------- sinogram

/// `# alpha_min alpha_max n_alpha p0 dp n_p` then row-major values.
pub fn sinogram_to_string(s: &Sinogram) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {} {} {} {} {} {}",
        s.sector().alpha_min(),
        s.sector().alpha_max(),
        s.sector().count(),
        s.p0(),
        s.dp(),
        s.n_p()
    );
    for v in s.values() {
        let _ = writeln!(out, "{v}");
    }
    out
}

pub fn sinogram_from_str(content: &str) -> Result<Sinogram> {
    let mut lines = tokens_of(content);
    let (hline, htoks) = lines
        .next()
        .ok_or(Error::Parse { line: 1, msg: "empty sinogram file".into() })?;
    if htoks[0] != "#" || htoks.len() != 7 {
        return Err(Error::Parse {
            line: hline,
            msg: "sinogram header must be '# alpha_min alpha_max n_alpha p0 dp n_p'".into(),
        });
    }
    let sector = AngularSector::new(
        parse(htoks[1], hline, "alpha_min")?,
        parse(htoks[2], hline, "alpha_max")?,
        parse(htoks[3], hline, "n_alpha")?,
    )?;
    let p0: f64 = parse(htoks[4], hline, "p0")?;
    let dp: f64 = parse(htoks[5], hline, "dp")?;
    let n_p: usize = parse(htoks[6], hline, "n_p")?;
    let mut values = Vec::with_capacity(sector.count() * n_p);
    for (line, toks) in lines {
        if toks[0].starts_with('#') {
            continue;
        }
        for t in toks {
            values.push(parse(t, line, "sinogram value")?);
        }
    }
    Sinogram::new(sector, p0, dp, n_p, values)
}

// ------------------------------------------------------------------ tables

/// Aligned text table with a `#` header naming the columns.
pub fn table_to_string(columns: &[&str], rows: &[Vec<f64>]) -> String {
    let width = 24;
    let mut out = String::new();
    let _ = write!(out, "#");
    for c in columns {
        let _ = write!(out, " {c:>width$}");
    }
    let _ = writeln!(out);
    for row in rows {
        let _ = write!(out, " ");
        for v in row {
            let _ = write!(out, " {:>width$}", format!("{v}"));
        }
        let _ = writeln!(out);
    }
    out
}

// ------------------------------------------------------------- path layer

pub fn write_file(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content)?;
    Ok(())
}

pub fn read_file(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn signal_round_trip() {
        let s = SampledSignal::from_fn(f64::sin, -0.5, 0.037, 101, 1e-3).unwrap();
        let text = signal_to_string(&s);
        let back = signal_from_str(&text).unwrap();
        assert_eq!(s.values(), back.values());
        assert_eq!(s.x0(), back.x0());
        assert_eq!(s.dx(), back.dx());
        assert_eq!(s.delta(), back.delta());
        // byte-identical re-serialization
        assert_eq!(text, signal_to_string(&back));
    }

    #[test]
    fn signal_header_mismatch_reported_with_field() {
        let text = "# 0 0.1 99.0 0.001\n1.0\n2.0\n";
        match signal_from_str(text) {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("period")),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn bad_value_line_is_located() {
        let text = "# 0 0.1 0.3 0\n1.0\noops\n3.0\n";
        match signal_from_str(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn samples_round_trip_interval() {
        let w = SpectralWindow::interval(-2.0, 2.0, 6, 8).unwrap();
        let samples = SpectralSamples::from_fn(w, |xi| Complex64::new(xi[0].cos(), xi[0] * 0.5));
        let text = samples_to_string(&samples, &[6, 8]);
        let back = samples_from_str(&text).unwrap();
        assert_eq!(samples.values(), back.values());
        assert_eq!(samples.window().nodes(), back.window().nodes());
    }

    #[test]
    fn samples_round_trip_cone() {
        let sector = AngularSector::new(0.5, 2.0, 12).unwrap();
        let w = SpectralWindow::cone(&sector.angles(), 4.0, 5, 6).unwrap();
        let samples = SpectralSamples::from_fn(w, |xi| Complex64::new(xi[0] + xi[1], -xi[1]));
        let text = samples_to_string(&samples, &[5, 6]);
        let back = samples_from_str(&text).unwrap();
        assert_eq!(samples.values(), back.values());
    }

    #[test]
    fn samples_node_mismatch_rejected() {
        let w = SpectralWindow::interval(-1.0, 1.0, 2, 3).unwrap();
        let samples = SpectralSamples::from_fn(w, |_| Complex64::new(1.0, 0.0));
        let text = samples_to_string(&samples, &[2, 3]);
        // perturb a node coordinate
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let mut fields: Vec<String> =
            lines[1].split_whitespace().map(String::from).collect();
        fields[0] = "0.123456".into();
        lines[1] = fields.join(" ");
        let bad = lines.join("\n");
        assert!(matches!(samples_from_str(&bad), Err(Error::Config(_))));
    }

    #[test]
    fn field_round_trip_2d() {
        let grid = EvalGrid::raster([-1.0, -1.0], [1.0, 1.0], 5);
        let values = (0..25)
            .map(|i| Complex64::new(i as f64 * 0.1, -(i as f64)))
            .collect();
        let f = Field { grid, values };
        let text = field_to_string(&f);
        let back = field_from_str(&text).unwrap();
        assert_eq!(f.values, back.values);
        assert_eq!(f.grid, back.grid);
    }

    #[test]
    fn sinogram_round_trip() {
        let sector = AngularSector::new(0.4, 2.2, 7).unwrap();
        let values: Vec<f64> = (0..7 * 11).map(|i| (i as f64).sin()).collect();
        let s = Sinogram::new(sector, -1.0, 0.2, 11, values).unwrap();
        let text = sinogram_to_string(&s);
        let back = sinogram_from_str(&text).unwrap();
        assert_eq!(s.values(), back.values());
        assert_eq!(s.sector(), back.sector());
    }

    #[test]
    fn table_format_smoke() {
        let t = table_to_string(&["t", "eps", "norm"], &[vec![0.0, 0.1, 1.5]]);
        assert!(t.starts_with('#'));
        assert!(t.contains("norm"));
        assert!(t.contains("1.5"));
    }

    proptest! {
        #[test]
        fn signal_values_survive_round_trip(
            vals in proptest::collection::vec(-1e6f64..1e6, 1..40),
            dx in 1e-6f64..10.0,
            delta in 0.0f64..1.0,
        ) {
            let s = SampledSignal::new(vals, -3.0, dx, delta).unwrap();
            let back = signal_from_str(&signal_to_string(&s)).unwrap();
            prop_assert_eq!(s.values(), back.values());
            prop_assert_eq!(s.dx().to_bits(), back.dx().to_bits());
        }
    }
}

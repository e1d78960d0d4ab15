//! `planeid` command-line frontend.
//!
//! Exit status: 0 on success, 1 when some records could not be measured,
//! 2 on usage, configuration or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use planeid::evaluate::{build_confusion, evaluate_scene, parse_pairs};
use planeid::identify::{identify_record, IdentifyConfig};
use planeid::maskio::{validate, validate_record, FindingKind, Severity};
use planeid::photogrammetry::{compute_gsd, CameraModel, FlightParams};
use planeid::synth::{generate_manifest, FleetOptions, ShapeKind, SynthScene};
use planeid::{CatalogF64, SceneManifestF64};

#[derive(Parser, Debug)]
#[command(
    name = "planeid",
    version,
    about = "Aircraft type identification from nadir instance masks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ground sample distance of a nadir camera.
    Gsd {
        #[arg(long)]
        sensor_width_mm: f64,
        #[arg(long)]
        focal_mm: f64,
        #[arg(long)]
        image_width_px: u32,
        #[arg(long)]
        altitude_m: f64,
    },
    /// Measure and classify every record of a manifest.
    Identify {
        manifest: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Score a manifest with ground truth, or replay stored prediction pairs.
    Evaluate {
        #[arg(required_unless_present = "pairs", conflicts_with = "pairs")]
        manifest: Option<PathBuf>,
        /// `ground_truth,predicted` CSV to build the confusion matrix from.
        #[arg(long)]
        pairs: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        json_out: Option<PathBuf>,
        #[arg(long)]
        text_out: Option<PathBuf>,
        /// Confusion matrix as CSV.
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
    /// Report input problems without measuring.
    Validate {
        manifest: PathBuf,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Generate a synthetic dataset of silhouettes with known lengths.
    Synth {
        /// `all` or a comma-separated list of catalog shortcuts.
        #[arg(long, default_value = "all")]
        types: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 30.0)]
        gsd_cm: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long, value_enum, default_value_t = Shape::StylizedPlane)]
        shape: Shape,
        /// Span (or box width) over length.
        #[arg(long)]
        aspect: Option<f64>,
        /// Fixed rotation; random per instance when omitted.
        #[arg(long)]
        rotation_deg: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        crop_fraction: f64,
        /// Override every drawn length.
        #[arg(long)]
        length_m: Option<f64>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        length_delta_m: f64,
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct Common {
    /// `name,shortcut,length_m` CSV replacing the built-in fleet.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Error fraction of the matched length above which a match is flagged.
    #[arg(long, default_value_t = 0.25)]
    low_confidence: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Shape {
    Rectangle,
    StylizedPlane,
}

impl From<Shape> for ShapeKind {
    fn from(s: Shape) -> Self {
        match s {
            Shape::Rectangle => ShapeKind::Rectangle,
            Shape::StylizedPlane => ShapeKind::StylizedPlane,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Gsd {
            sensor_width_mm,
            focal_mm,
            image_width_px,
            altitude_m,
        } => cmd_gsd(sensor_width_mm, focal_mm, image_width_px, altitude_m),
        Command::Identify {
            manifest,
            common,
            format,
        } => cmd_identify(&manifest, &common, format),
        Command::Evaluate {
            manifest,
            pairs,
            common,
            json_out,
            text_out,
            csv_out,
        } => {
            let outs = Outputs {
                json: json_out,
                text: text_out,
                csv: csv_out,
            };
            match (manifest, pairs) {
                (_, Some(pairs)) => cmd_replay(&pairs, &common, &outs),
                (Some(manifest), None) => cmd_evaluate(&manifest, &common, &outs),
                (None, None) => unreachable!("clap requires one of them"),
            }
        }
        Command::Validate {
            manifest,
            catalog,
            format,
        } => cmd_validate(&manifest, catalog.as_deref(), format),
        Command::Synth {
            types,
            count,
            gsd_cm,
            seed,
            out,
            scale,
            shape,
            aspect,
            rotation_deg,
            crop_fraction,
            length_m,
            length_delta_m,
            catalog,
        } => {
            let opts = FleetOptions {
                types: if types.trim() == "all" {
                    Vec::new()
                } else {
                    types
                        .split(',')
                        .map(|t| t.trim().to_string())
                        .filter(|t| !t.is_empty())
                        .collect()
                },
                count,
                gsd_cm,
                resize_scale: scale,
                seed,
                shape_kind: shape.into(),
                aspect_ratio: aspect,
                rotation_deg,
                crop_fraction,
                length_m,
                length_delta_m,
            };
            cmd_synth(&opts, catalog.as_deref(), &out)
        }
    }
}

fn load_catalog(path: Option<&Path>) -> Result<CatalogF64> {
    match path {
        Some(p) => CatalogF64::load_csv(p).with_context(|| format!("loading catalog {}", p.display())),
        None => Ok(CatalogF64::default_fleet()),
    }
}

fn load_manifest(path: &Path) -> Result<SceneManifestF64> {
    SceneManifestF64::load(path).with_context(|| format!("loading manifest {}", path.display()))
}

fn config(common: &Common) -> Result<IdentifyConfig<f64>> {
    let r = common.low_confidence;
    if !(r.is_finite() && r > 0.0) {
        bail!("--low-confidence must be > 0, got {r}");
    }
    Ok(IdentifyConfig {
        low_confidence_ratio: r,
    })
}

fn write_out(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn cmd_gsd(sensor_width_mm: f64, focal_mm: f64, image_width_px: u32, altitude_m: f64) -> Result<u8> {
    // sensor height does not enter the ground resolution
    let camera = CameraModel::new(sensor_width_mm, sensor_width_mm, focal_mm, image_width_px, 1)?;
    let gsd = compute_gsd(&camera, &FlightParams::new(altitude_m)?)?;
    println!("cm_per_px: {}", gsd.cm_per_px());
    println!("m_per_px: {}", gsd.m_per_px());
    println!("{:.2} cm/px", gsd.cm_per_px());
    Ok(0)
}

/// One output row of `identify`.
struct Row {
    image_id: String,
    outcome: std::result::Result<planeid::IdentificationF64, String>,
    warnings: Vec<FindingKind>,
}

fn cmd_identify(path: &Path, common: &Common, format: Format) -> Result<u8> {
    let catalog = load_catalog(common.catalog.as_deref())?;
    let cfg = config(common)?;
    let manifest = load_manifest(path)?;
    let rows: Vec<Row> = manifest
        .records
        .iter()
        .map(|r| {
            let outcome =
                identify_record(r, &manifest.camera, &manifest.flight, &catalog, &cfg).map_err(|e| match e.root() {
                    planeid::Error::EmptyDetection => "empty-detection".to_string(),
                    other => other.to_string(),
                });
            let mut warnings = outcome.as_ref().map(|id| id.warnings.clone()).unwrap_or_default();
            for f in validate_record(r, &catalog) {
                if matches!(
                    f.kind,
                    FindingKind::OutOfBounds { .. } | FindingKind::UnknownType { .. }
                ) {
                    warnings.push(f.kind);
                }
            }
            Row {
                image_id: r.image_id.clone(),
                outcome,
                warnings,
            }
        })
        .collect();

    let out = match format {
        Format::Json => identify_json(&rows),
        Format::Csv => identify_csv(&rows)?,
        Format::Text => identify_text(&rows),
    };
    print!("{out}");
    Ok(if rows.iter().any(|r| r.outcome.is_err()) { 1 } else { 0 })
}

fn warning_list(ws: &[FindingKind]) -> String {
    ws.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

fn identify_json(rows: &[Row]) -> String {
    let records: Vec<_> = rows
        .iter()
        .map(|r| match &r.outcome {
            Ok(id) => json!({
                "image_id": r.image_id,
                "length_m": id.measurement.length_m,
                "area_m2": id.measurement.area_m2,
                "pixel_count": id.measurement.pixel_count,
                "predicted": id.classification.predicted.shortcut,
                "abs_error_m": id.classification.abs_error_m,
                "margin_m": id.classification.margin_m,
                "runner_up": id.classification.runner_up.as_ref().map(|s| &s.shortcut),
                "low_confidence": id.classification.low_confidence,
                "warnings": r.warnings,
                "error": null,
            }),
            Err(msg) => json!({
                "image_id": r.image_id,
                "warnings": r.warnings,
                "error": msg,
            }),
        })
        .collect();
    serde_json::to_string_pretty(&json!({ "schema": 1, "records": records })).expect("json") + "\n"
}

fn identify_csv(rows: &[Row]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "image_id",
        "length_m",
        "area_m2",
        "predicted",
        "abs_error_m",
        "margin_m",
        "warnings",
        "error",
    ])?;
    for r in rows {
        let warnings = warning_list(&r.warnings);
        match &r.outcome {
            Ok(id) => w.write_record([
                r.image_id.as_str(),
                &id.measurement.length_m.to_string(),
                &id.measurement.area_m2.to_string(),
                &id.classification.predicted.shortcut,
                &id.classification.abs_error_m.to_string(),
                &id.classification.margin_m.to_string(),
                &warnings,
                "",
            ])?,
            Err(msg) => w.write_record([r.image_id.as_str(), "", "", "", "", "", &warnings, msg])?,
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn identify_text(rows: &[Row]) -> String {
    let headers = [
        "image_id",
        "length_m",
        "area_m2",
        "predicted",
        "abs_error_m",
        "margin_m",
        "warnings",
    ];
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| match &r.outcome {
            Ok(id) => [
                r.image_id.clone(),
                format!("{:.2}", id.measurement.length_m),
                format!("{:.1}", id.measurement.area_m2),
                id.classification.predicted.shortcut.clone(),
                format!("{:.2}", id.classification.abs_error_m),
                format!("{:.2}", id.classification.margin_m),
                warning_list(&r.warnings),
            ],
            Err(msg) => {
                let mut notes = vec![format!("error: {msg}")];
                notes.extend(r.warnings.iter().map(ToString::to_string));
                [
                    r.image_id.clone(),
                    "-".into(),
                    "-".into(),
                    "-".into(),
                    "-".into(),
                    "-".into(),
                    notes.join("; "),
                ]
            }
        })
        .collect();
    let mut widths = headers.map(str::len);
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |row: [&str; 7]| {
        let mut s = format!("{:<w$}", row[0], w = widths[0]);
        for (i, (c, w)) in row.iter().zip(&widths).enumerate().skip(1) {
            if i == 3 || i == 6 {
                s.push_str(&format!("  {c:<w$}"));
            } else {
                s.push_str(&format!("  {c:>w$}"));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(headers);
    for r in &cells {
        out.push_str(&line([&r[0], &r[1], &r[2], &r[3], &r[4], &r[5], &r[6]]));
    }
    out
}

struct Outputs {
    json: Option<PathBuf>,
    text: Option<PathBuf>,
    csv: Option<PathBuf>,
}

fn cmd_evaluate(path: &Path, common: &Common, outs: &Outputs) -> Result<u8> {
    let catalog = load_catalog(common.catalog.as_deref())?;
    let cfg = config(common)?;
    let manifest = load_manifest(path)?;
    let report = evaluate_scene(&manifest, &catalog, &cfg)?;
    let text = report.render_text();
    if let Some(p) = &outs.json {
        write_out(p, &report.to_json_pretty())?;
    }
    if let Some(p) = &outs.text {
        write_out(p, &text)?;
    }
    if let Some(p) = &outs.csv {
        write_out(p, &report.matrix.to_csv())?;
    }
    print!("{text}");
    match report.overall_avg_accuracy_pct {
        Some(a) => println!("\noverall length accuracy: {a:.2}%"),
        None => println!("\noverall length accuracy: -"),
    }
    if let Some(a) = report.matrix.accuracy() {
        println!("classification accuracy: {:.2}%", 100.0 * a);
    }
    let failed = report
        .findings
        .iter()
        .any(|f| matches!(f.kind, FindingKind::EmptyDetection | FindingKind::RecordFailed { .. }));
    Ok(if failed { 1 } else { 0 })
}

fn cmd_replay(path: &Path, common: &Common, outs: &Outputs) -> Result<u8> {
    let catalog = load_catalog(common.catalog.as_deref())?;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let pairs = parse_pairs(&text).with_context(|| format!("parsing {}", path.display()))?;
    let matrix = build_confusion(&pairs, &catalog)?;
    let rendered = matrix.render_text();
    if let Some(p) = &outs.json {
        let doc = json!({
            "schema": 1,
            "classification_accuracy": matrix.accuracy(),
            "matrix": matrix,
        });
        write_out(p, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    }
    if let Some(p) = &outs.text {
        write_out(p, &rendered)?;
    }
    if let Some(p) = &outs.csv {
        write_out(p, &matrix.to_csv())?;
    }
    print!("{rendered}");
    if let Some(a) = matrix.accuracy() {
        println!(
            "\nclassification accuracy: {:.2}% ({}/{})",
            100.0 * a,
            matrix.trace(),
            matrix.total()
        );
    }
    Ok(0)
}

fn cmd_validate(path: &Path, catalog: Option<&Path>, format: Format) -> Result<u8> {
    let catalog = load_catalog(catalog)?;
    let manifest = load_manifest(path)?;
    let findings = validate(&manifest, &catalog);
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json!({ "schema": 1, "findings": findings }))?
        ),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["image_id", "severity", "finding"])?;
            for f in &findings {
                let sev = match f.severity {
                    Severity::Warning => "warning",
                    Severity::Error => "error",
                };
                w.write_record([f.image_id.as_str(), sev, &f.kind.to_string()])?;
            }
            print!("{}", String::from_utf8(w.into_inner()?)?);
        }
        Format::Text => {
            for f in &findings {
                println!("{f}");
            }
            println!("{} records, {} findings", manifest.records.len(), findings.len());
        }
    }
    Ok(if findings.iter().any(|f| f.severity == Severity::Error) {
        1
    } else {
        0
    })
}

fn cmd_synth(opts: &FleetOptions, catalog: Option<&Path>, out: &Path) -> Result<u8> {
    let catalog = load_catalog(catalog)?;
    let scene = SynthScene::fleet(&catalog, opts)?;
    let generated = generate_manifest(&scene, out)?;
    println!("{}", generated.manifest_path.display());
    Ok(0)
}

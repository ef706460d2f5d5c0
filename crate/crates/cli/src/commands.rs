use std::fs;
use std::io::Read;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use thermolam::classification::Scales;
use thermolam::laminate::LaminateFile;
use thermolam::response::{component, polar_diagram, surface_sample, PlotTensor};
use thermolam::search::{exact_predicate, verify as verify_predicates, Dedup};
use thermolam::{
    classify as classify_laminate, compliance, deform as deform_laminate, enumerate,
    polar_homogenize, stiffness_tensors, Error, KelvinVec, Laminate, MaterialCatalog, Predicate,
    Result, SearchSpec, StiffnessSet, ThermalLoad,
};

use crate::render::{Doc, Format};
use crate::report::{AnalyzeReport, VerifySection};

fn read_input(path: &Path) -> Result<String> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?
    };
    Ok(text)
}

pub fn load_laminate(path: &Path) -> Result<Laminate> {
    LaminateFile::parse(&read_input(path)?).map_err(|e| match e {
        Error::Json(j) => Error::InvalidInput(format!("{}: {j}", path.display())),
        other => other,
    })
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialise to JSON")
}

fn analysed(
    path: &Path,
    catalog: &MaterialCatalog,
) -> Result<(Laminate, StiffnessSet, thermolam::ComplianceSet)> {
    let lam = load_laminate(path)?;
    let s = stiffness_tensors(&lam, catalog)?;
    let c = compliance(&s)?;
    Ok((lam, s, c))
}

pub fn analyze(path: &Path, verify: bool, catalog: &MaterialCatalog) -> Result<Doc> {
    let (lam, s, c) = analysed(path, catalog)?;
    Ok(Doc::Tree(to_value(&AnalyzeReport::new(
        &lam, &s, &c, verify,
    )?)))
}

pub fn classify(
    input: Option<&Path>,
    from_report: Option<&Path>,
    tol: f64,
    catalog: &MaterialCatalog,
) -> Result<Doc> {
    let (name, s) = match (input, from_report) {
        (Some(path), None) => {
            let lam = load_laminate(path)?;
            (lam.name.clone(), stiffness_tensors(&lam, catalog)?)
        }
        (None, Some(path)) => {
            let report: AnalyzeReport = serde_json::from_str(&read_input(path)?).map_err(|e| {
                Error::InvalidInput(format!("{}: not an analyze report: {e}", path.display()))
            })?;
            (
                report.laminate.name.unwrap_or_default(),
                report.stiffness.to_stiffness(),
            )
        }
        _ => {
            return Err(Error::InvalidInput(
                "give a laminate file or --from-report".into(),
            ))
        }
    };
    let c = compliance(&s)?;
    let report = classify_laminate(&s, &c, tol)?;
    Ok(Doc::Tree(
        json!({ "laminate": name, "classification": to_value(&report) }),
    ))
}

pub struct DeformArgs {
    pub load: ThermalLoad,
    pub n: KelvinVec,
    pub m: KelvinVec,
    pub plate: Option<(f64, f64)>,
    pub grid: usize,
}

pub fn deform(
    path: &Path,
    a: &DeformArgs,
    format: Format,
    catalog: &MaterialCatalog,
) -> Result<Doc> {
    let (lam, s, c) = analysed(path, catalog)?;
    let r = deform_laminate(&s, &c, a.n, a.m, a.load);
    let Some((side_x, side_y)) = a.plate else {
        return Ok(Doc::Tree(json!({
            "laminate": lam.name,
            "load": { "t": a.load.t, "grad_t": a.load.grad_t, "N": a.n, "M": a.m },
            "response": to_value(&r),
        })));
    };
    let points = surface_sample(&r, side_x, side_y, a.grid)?;
    if format == Format::Csv {
        let rows = points
            .iter()
            .map(|&(x, y, z)| vec![json!(x), json!(y), json!(z)])
            .collect();
        return Ok(Doc::Table {
            columns: vec!["x_mm".into(), "y_mm".into(), "z_mm".into()],
            rows,
        });
    }
    let max_abs_z = points.iter().map(|p| p.2.abs()).fold(0.0, f64::max);
    Ok(Doc::Tree(json!({
        "laminate": lam.name,
        "load": { "t": a.load.t, "grad_t": a.load.grad_t, "N": a.n, "M": a.m },
        "response": to_value(&r),
        "surface": {
            "side_x_mm": side_x,
            "side_y_mm": side_y,
            "grid": a.grid,
            "max_abs_z_mm": max_abs_z,
            "points": points.iter().map(|&(x, y, z)| [x, y, z]).collect::<Vec<_>>(),
        },
    })))
}

pub struct SearchArgs {
    pub n: usize,
    pub orientations: Vec<f64>,
    pub predicates: Vec<Predicate>,
    pub max_results: Option<usize>,
    pub dedup: Dedup,
    pub material: String,
    pub skip_verify: bool,
}

pub fn search(a: SearchArgs, catalog: &MaterialCatalog) -> Result<Doc> {
    let spec = SearchSpec {
        n: a.n,
        orientations_deg: a.orientations,
        predicates: a.predicates,
        max_results: a.max_results,
        dedup: a.dedup,
        material: a.material,
        skip_verify: a.skip_verify,
    };
    let found = enumerate(&spec, catalog)?;
    let records = found
        .iter()
        .map(|r| {
            let seq = r
                .sequence_deg
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let verified = r
                .verification
                .as_ref()
                .map_or(Value::Null, |v| json!(v.passed));
            (to_value(r), vec![json!(seq), json!(r.exact), verified])
        })
        .collect();
    Ok(Doc::Lines {
        columns: vec!["sequence_deg".into(), "exact".into(), "verified".into()],
        records,
    })
}

fn plot_tensor(name: &str, s: &StiffnessSet, c: &thermolam::ComplianceSet) -> Result<PlotTensor> {
    use thermolam::{PolarParams2 as P2, PolarParams4 as P4};
    let hp = thermolam::laminate::homogeneity_tensors(s);
    let p = &c.polar;
    Ok(match name {
        "A" => PlotTensor::Fourth(P4::from_cartesian(&s.a)),
        "B" => PlotTensor::Fourth(P4::from_cartesian(&s.b)),
        "D" => PlotTensor::Fourth(P4::from_cartesian(&s.d)),
        "C" => PlotTensor::Fourth(hp.c_polar),
        "U" => PlotTensor::Second(P2::from_cartesian(&s.u)),
        "V" => PlotTensor::Second(P2::from_cartesian(&s.v)),
        "W" => PlotTensor::Second(P2::from_cartesian(&s.w)),
        "Y" => PlotTensor::Second(hp.y_polar),
        "a" => PlotTensor::Fourth(p.a),
        "b" => PlotTensor::Coupling(p.b),
        "d" => PlotTensor::Fourth(p.d),
        "u" => PlotTensor::Second(p.u),
        "v1" => PlotTensor::Second(p.v1),
        "v2" => PlotTensor::Second(p.v2),
        "w" => PlotTensor::Second(p.w),
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown tensor `{other}`, expected one of A B D C U V W Y a b d u v1 v2 w"
            )))
        }
    })
}

pub fn polar_plot(
    path: &Path,
    tensor: &str,
    ij: &str,
    step: f64,
    catalog: &MaterialCatalog,
) -> Result<Doc> {
    let (_, s, c) = analysed(path, catalog)?;
    let t = plot_tensor(tensor, &s, &c)?;
    component(&t, ij, 0.0)?;
    let rows = polar_diagram(&t, ij, step)?
        .into_iter()
        .map(|(deg, v)| vec![json!(deg), json!(v)])
        .collect();
    Ok(Doc::Table {
        columns: vec!["theta_deg".into(), format!("{tensor}{ij}")],
        rows,
    })
}

/// Numeric self-checks of a laminate; the flag is false if any fails.
pub fn verify(
    path: &Path,
    predicates: &[Predicate],
    tol: f64,
    catalog: &MaterialCatalog,
) -> Result<(Doc, bool)> {
    let (lam, s, c) = analysed(path, catalog)?;
    let section = VerifySection::new(&s, &c)?;
    let mut passed = section.oracle_max_deviation <= tol && section.form_max_residual <= tol;
    let mut out = json!({
        "laminate": lam.name,
        "tolerance": tol,
        "oracle": to_value(&section.oracle),
        "oracle_max_deviation": section.oracle_max_deviation,
        "forms": to_value(&section.forms),
        "form_max_residual": section.form_max_residual,
    });

    if s.ply.is_some() {
        let sc = Scales::of(&s);
        let p = polar_homogenize(&lam, catalog)?.to_cartesian(s.h, s.ply);
        let dev = [
            (s.a - p.a).max_abs(),
            (s.b - p.b).max_abs(),
            (s.d - p.d).max_abs(),
        ]
        .into_iter()
        .map(|x| x / sc.elastic)
        .chain([(s.u - p.u), (s.v - p.v), (s.w - p.w)].map(|x| x.max_abs() / sc.thermal))
        .fold(0.0, f64::max);
        passed &= dev <= tol;
        out["two_route_max_deviation"] = json!(dev);
    }

    if !predicates.is_empty() {
        let material = lam
            .common_material()
            .ok_or_else(|| Error::InvalidInput("predicate checks need identical plies".into()))?;
        let angles = lam.angles_deg();
        let report = verify_predicates(&angles, material, catalog, predicates)?;
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|chk| {
                let exact = exact_predicate(&angles, chk.predicate);
                json!({
                    "predicate": chk.predicate.name(),
                    "numeric": chk.passed,
                    "exact": exact,
                    "residual": chk.residual,
                })
            })
            .collect();
        passed &= report.passed;
        out["predicates"] = Value::Array(checks);
    }
    out["passed"] = json!(passed);
    Ok((Doc::Tree(out), passed))
}

//! Deformation of a laminate under membrane forces, moments and temperature.

use serde::{Deserialize, Serialize};

use crate::compliance::ComplianceSet;
use crate::error::{Error, Result};
use crate::kelvin::{KelvinVec, SQRT2};
use crate::laminate::StiffnessSet;
use crate::polar::{PolarParams2, PolarParams4, PolarParamsB9};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ThermalLoad {
    /// Uniform temperature change, °C.
    pub t: f64,
    /// Through-thickness gradient, °C/mm.
    pub grad_t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub eps: KelvinVec,
    /// mm⁻¹
    pub kappa: KelvinVec,
    pub kappa_principal: (f64, f64),
    /// mm⁻²
    pub k_gauss: f64,
    /// mm⁻¹
    pub h_mean: f64,
}

impl Response {
    pub fn from_strains(eps: KelvinVec, kappa: KelvinVec) -> Self {
        let (k1, k2, k12) = (kappa.v1, kappa.v2, kappa.v6 / SQRT2);
        let mean = 0.5 * (k1 + k2);
        let rad = (0.5 * (k1 - k2)).hypot(k12);
        let (ki, kii) = (mean + rad, mean - rad);
        // the determinant avoids the cancellation in ki * kii for saddles
        Self {
            eps,
            kappa,
            kappa_principal: (ki, kii),
            k_gauss: k1 * k2 - k12 * k12,
            h_mean: mean,
        }
    }
}

/// Strains and curvatures from `N, M` and the thermal load.
pub fn deform(
    s: &StiffnessSet,
    c: &ComplianceSet,
    n: KelvinVec,
    m: KelvinVec,
    load: ThermalLoad,
) -> Response {
    let h = s.h;
    let eps = c.a.mul_vec(n) * (1.0 / h)
        + c.b.mul_vec(m) * (2.0 / (h * h))
        + c.u * load.t
        + c.v2 * load.grad_t;
    let kappa = c.b.transpose().mul_vec(n) * (2.0 / (h * h))
        + c.d.mul_vec(m) * (12.0 / (h * h * h))
        + c.v1 * load.t
        + c.w * load.grad_t;
    Response::from_strains(eps, kappa)
}

/// Membrane forces and moments that hold the laminate at `eps, kappa`.
pub fn internal_actions(
    s: &StiffnessSet,
    eps: KelvinVec,
    kappa: KelvinVec,
    load: ThermalLoad,
) -> (KelvinVec, KelvinVec) {
    let h = s.h;
    let (h2, h3) = (h * h / 2.0, h * h * h / 12.0);
    let n = s.a.mul_vec(eps) * h + s.b.mul_vec(kappa) * h2
        - s.u * (load.t * h)
        - s.v * (load.grad_t * h2);
    let m = s.b.mul_vec(eps) * h2 + s.d.mul_vec(kappa) * h3
        - s.v * (load.t * h2)
        - s.w * (load.grad_t * h3);
    (n, m)
}

/// Out-of-plane deflection `z = −½(κ1 x² + κ2 y² + √2 κ6 x y)`.
pub fn deflection(kappa: KelvinVec, x: f64, y: f64) -> f64 {
    -0.5 * (kappa.v1 * x * x + kappa.v2 * y * y + SQRT2 * kappa.v6 * x * y)
}

/// `(x, y, z)` on a `grid × grid` lattice over a centred `side_x × side_y` plate, row-major in `y`.
pub fn surface_sample(
    resp: &Response,
    side_x: f64,
    side_y: f64,
    grid: usize,
) -> Result<Vec<(f64, f64, f64)>> {
    if grid < 2 {
        return Err(Error::InvalidInput(format!(
            "grid must be at least 2, got {grid}"
        )));
    }
    if !(side_x > 0.0 && side_y > 0.0) {
        return Err(Error::InvalidInput(format!(
            "plate sides must be positive, got {side_x} x {side_y}"
        )));
    }
    let step = |side: f64, k: usize| -0.5 * side + side * k as f64 / (grid - 1) as f64;
    let mut out = Vec::with_capacity(grid * grid);
    for j in 0..grid {
        let y = step(side_y, j);
        for i in 0..grid {
            let x = step(side_x, i);
            out.push((x, y, deflection(resp.kappa, x, y)));
        }
    }
    Ok(out)
}

/// A tensor whose polar diagram can be drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlotTensor {
    Fourth(PolarParams4),
    Coupling(PolarParamsB9),
    Second(PolarParams2),
}

/// Component `ij` (Kelvin indices `1`, `2`, `6`) of a tensor viewed in a
/// frame at `theta`. Kelvin scale factors are removed, so the values are the
/// usual engineering-matrix entries (`A16`, `A66`, `u6` …).
pub fn component(t: &PlotTensor, ij: &str, theta: f64) -> Result<f64> {
    let bad = || Error::InvalidInput(format!("unknown component `{ij}`"));
    match t {
        PlotTensor::Second(p) => {
            let v = p.cartesian(theta);
            match ij {
                "1" | "11" => Ok(v.v1),
                "2" | "22" => Ok(v.v2),
                "6" | "12" => Ok(v.v6 / SQRT2),
                _ => Err(bad()),
            }
        }
        PlotTensor::Fourth(_) | PlotTensor::Coupling(_) => {
            let m = match t {
                PlotTensor::Fourth(p) => p.cartesian(theta).as_general(),
                PlotTensor::Coupling(p) => p.cartesian(theta),
                PlotTensor::Second(_) => unreachable!(),
            };
            let idx = |c: char| match c {
                '1' => Some(0),
                '2' => Some(1),
                '6' => Some(2),
                _ => None,
            };
            let mut chars = ij.chars();
            let (i, j) = match (
                chars.next().and_then(idx),
                chars.next().and_then(idx),
                chars.next(),
            ) {
                (Some(i), Some(j), None) => (i, j),
                _ => return Err(bad()),
            };
            let factor = match (i == 2) as u8 + (j == 2) as u8 {
                0 => 1.0,
                1 => 1.0 / SQRT2,
                _ => 0.5,
            };
            Ok(m.to_array()[i][j] * factor)
        }
    }
}

/// `(θ in degrees, value)` rows over `[0°, 360°)`.
pub fn polar_diagram(t: &PlotTensor, ij: &str, step_deg: f64) -> Result<Vec<(f64, f64)>> {
    if !(step_deg > 0.0) || step_deg > 360.0 {
        return Err(Error::InvalidInput(format!(
            "step must be in (0, 360], got {step_deg}"
        )));
    }
    let rows = (360.0 / step_deg - 1e-9).ceil() as usize;
    (0..rows)
        .map(|k| {
            let deg = k as f64 * step_deg;
            component(t, ij, deg.to_radians()).map(|v| (deg, v))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compliance::compliance;
    use crate::kelvin::rel_diff_vec;
    use crate::laminate::{stiffness_tensors, Laminate, DEFAULT_PLY_THICKNESS};
    use crate::material::MaterialCatalog;

    fn first() -> (StiffnessSet, ComplianceSet) {
        let lam = Laminate::identical(
            "first",
            "T300/5208",
            &[0., 0., 0., 0., 0., 0., 90., 90., 90., 90., 90., 90.],
            DEFAULT_PLY_THICKNESS,
        )
        .unwrap();
        let s = stiffness_tensors(&lam, &MaterialCatalog::builtin()).unwrap();
        let c = compliance(&s).unwrap();
        (s, c)
    }

    #[test]
    fn uniform_temperature_gives_a_saddle() {
        let (s, c) = first();
        let r = deform(
            &s,
            &c,
            KelvinVec::ZERO,
            KelvinVec::ZERO,
            ThermalLoad {
                t: 50.0,
                grad_t: 0.0,
            },
        );
        assert!(((r.kappa.v1 - 5.68e-2) / 5.68e-2).abs() < 1e-2);
        assert!(r.h_mean.abs() < 1e-12 * r.kappa.v1.abs());
        assert!(r.k_gauss < 0.0);
        assert!(
            (r.k_gauss - r.kappa_principal.0 * r.kappa_principal.1).abs() < 1e-12 * r.k_gauss.abs()
        );
    }

    #[test]
    fn zero_load() {
        let (s, c) = first();
        let r = deform(
            &s,
            &c,
            KelvinVec::ZERO,
            KelvinVec::ZERO,
            ThermalLoad::default(),
        );
        assert_eq!(r.eps, KelvinVec::ZERO);
        assert_eq!(r.kappa, KelvinVec::ZERO);
    }

    #[test]
    fn round_trip() {
        let (s, c) = first();
        let load = ThermalLoad {
            t: -120.0,
            grad_t: 3.0,
        };
        let n = KelvinVec::new(12.0, -4.0, 3.0);
        let m = KelvinVec::new(-1.5, 2.0, 0.7);
        let r = deform(&s, &c, n, m, load);
        let (n2, m2) = internal_actions(&s, r.eps, r.kappa, load);
        assert!(rel_diff_vec(n, n2) < 1e-9 && rel_diff_vec(m, m2) < 1e-9);
    }

    #[test]
    fn clamped_thermal_reactions() {
        let (s, _) = first();
        let (n, m) = internal_actions(
            &s,
            KelvinVec::ZERO,
            KelvinVec::ZERO,
            ThermalLoad {
                t: 1.0,
                grad_t: 0.0,
            },
        );
        assert_eq!(n, s.u * -s.h);
        assert_eq!(m, s.v * -(s.h * s.h / 2.0));
    }

    #[test]
    fn surface_shapes() {
        let c = 0.01;
        let saddle = Response::from_strains(KelvinVec::ZERO, KelvinVec::new(c, -c, 0.0));
        assert_eq!(deflection(saddle.kappa, 10.0, 0.0), -0.5 * c * 100.0);
        assert_eq!(deflection(saddle.kappa, 0.0, 10.0), 0.5 * c * 100.0);
        let grid = surface_sample(&saddle, 100.0, 50.0, 3).unwrap();
        assert_eq!(grid.len(), 9);
        assert_eq!(grid[0], (-50.0, -25.0, -0.5 * c * (2500.0 - 625.0)));
        assert_eq!(grid[4], (0.0, 0.0, 0.0));
        assert!(surface_sample(&saddle, 1.0, 1.0, 1).is_err());

        // twist: z = -xy κ12
        let twist = KelvinVec::new(0.0, 0.0, SQRT2 * c);
        assert!((deflection(twist, 2.0, 3.0) + 6.0 * c).abs() < 1e-15);
    }

    #[test]
    fn diagram_rows_and_components() {
        let (s, c) = first();
        let a = PlotTensor::Fourth(PolarParams4::from_cartesian(&s.a));
        let rows = polar_diagram(&a, "11", 5.0).unwrap();
        assert_eq!(rows.len(), 72);
        assert!((rows[0].1 - s.a.m11).abs() < 1e-9 * s.a.m11);
        let max = rows
            .iter()
            .cloned()
            .fold((0.0, f64::MIN), |m, r| if r.1 > m.1 { r } else { m });
        assert!(max.0 == 0.0 || max.0 == 180.0);
        let a66 = component(&a, "66", 0.0).unwrap();
        assert!((a66 - s.a.m66 / 2.0).abs() < 1e-9 * a66);
        assert!(component(&a, "13", 0.0).is_err());
        let u = PlotTensor::Second(c.polar.u);
        let rows = polar_diagram(&u, "1", 10.0).unwrap();
        assert!(rows
            .iter()
            .all(|r| (r.1 - rows[0].1).abs() < 1e-12 * rows[0].1));
        assert!(polar_diagram(&u, "1", 0.0).is_err());
    }
}

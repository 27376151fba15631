//! One row of bounds `(e_k, e_g, e_2g)` with the reason for every
//! missing value.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use nboson_core::kleingordon::{solve_kg_with, spectral_f_with, KgOptions};
use nboson_core::potential::PotentialShape;
use nboson_core::variational::{upper_bound_e2g, upper_bound_eg, VariationalResult};

use crate::format::{csv_line, opt_g9};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    NoRoot,
    Supercritical,
    NoStationaryMinimum,
    SolverFailure,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::NoRoot => "no-root",
            Reason::Supercritical => "supercritical",
            Reason::NoStationaryMinimum => "no-stationary-minimum",
            Reason::SolverFailure => "solver-failure",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Physical {
    pub n: u64,
    pub m: f64,
    pub a: f64,
    pub v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    pub mu: f64,
    pub nu: f64,
    pub lambda: f64,
    pub shape: String,
    pub physical: Option<Physical>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub value: Option<f64>,
    /// Minimising inverse width, for the variational values.
    pub s_star: Option<f64>,
    /// `F′(e_k)`, for the Klein–Gordon value.
    pub f_prime: Option<f64>,
    pub reason: Option<Reason>,
    pub detail: Option<String>,
    pub wall_ms: f64,
}

impl Bound {
    fn absent(reason: Reason, detail: Option<String>, wall_ms: f64) -> Self {
        Self {
            value: None,
            s_star: None,
            f_prime: None,
            reason: Some(reason),
            detail,
            wall_ms,
        }
    }

    fn failed(&self) -> bool {
        self.reason == Some(Reason::SolverFailure)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub inputs: Inputs,
    pub e_k: Bound,
    pub e_g: Bound,
    pub e_2g: Bound,
}

fn elapsed_ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn variational(result: nboson_core::Result<Option<VariationalResult>>, t: Instant) -> Bound {
    let wall_ms = elapsed_ms(t);
    match result {
        Ok(Some(r)) => Bound {
            value: Some(r.value),
            s_star: Some(r.s_star),
            f_prime: None,
            reason: None,
            detail: None,
            wall_ms,
        },
        Ok(None) => Bound::absent(Reason::NoStationaryMinimum, None, wall_ms),
        Err(e) => Bound::absent(Reason::SolverFailure, Some(e.to_string()), wall_ms),
    }
}

/// Why `solve_kg` has no valid root: a bound state already at `e = μ`
/// means the parabola `e² − μ²` lies below `F` across the whole interval,
/// the situation past the merge of the root pair.
fn missing_kg_reason(shape: &PotentialShape, mu: f64, nu: f64, opts: &KgOptions) -> nboson_core::Result<Reason> {
    if mu <= 0.0 {
        return Ok(Reason::NoRoot);
    }
    let (_, bound_at_mu) = spectral_f_with(shape, nu, mu, &opts.radial)?;
    Ok(if bound_at_mu {
        Reason::Supercritical
    } else {
        Reason::NoRoot
    })
}

fn klein_gordon(shape: &PotentialShape, mu: f64, nu: f64, opts: &KgOptions) -> Bound {
    let t = Instant::now();
    let found = solve_kg_with(shape, mu, nu, opts).and_then(|sol| match sol {
        Some(s) if s.valid => Ok(Ok(s)),
        _ => missing_kg_reason(shape, mu, nu, opts).map(Err),
    });
    let wall_ms = elapsed_ms(t);
    match found {
        Ok(Ok(s)) => Bound {
            value: Some(s.e_k),
            s_star: None,
            f_prime: Some(s.f_prime),
            reason: None,
            detail: None,
            wall_ms,
        },
        Ok(Err(reason)) => Bound::absent(reason, None, wall_ms),
        Err(e) => Bound::absent(Reason::SolverFailure, Some(e.to_string()), wall_ms),
    }
}

pub fn compute_bounds(shape: &PotentialShape, inputs: Inputs, opts: &KgOptions) -> BoundsReport {
    let (mu, nu, lambda) = (inputs.mu, inputs.nu, inputs.lambda);
    let e_k = klein_gordon(shape, mu, nu, opts);
    let t = Instant::now();
    let e_g = variational(upper_bound_eg(shape, mu, nu), t);
    let t = Instant::now();
    let e_2g = variational(upper_bound_e2g(shape, mu, nu, lambda), t);
    BoundsReport { inputs, e_k, e_g, e_2g }
}

impl BoundsReport {
    pub fn has_failure(&self) -> bool {
        self.e_k.failed() || self.e_g.failed() || self.e_2g.failed()
    }

    pub fn failure_details(&self) -> Vec<String> {
        [("e_k", &self.e_k), ("e_g", &self.e_g), ("e_2g", &self.e_2g)]
            .iter()
            .filter(|(_, b)| b.failed())
            .map(|(name, b)| format!("{name}: {}", b.detail.as_deref().unwrap_or("unknown")))
            .collect()
    }

    pub const CSV_HEADER: &'static str =
        "n,m,a,v,mu,nu,lambda,shape,e_k,f_prime,e_k_reason,e_g,s_g,e_g_reason,e_2g,s_2g,e_2g_reason,ms_k,ms_g,ms_2g\n";

    pub fn csv_row(&self) -> String {
        let p = self.inputs.physical;
        let reason = |b: &Bound| b.reason.map(|r| r.code().to_string()).unwrap_or_default();
        csv_line([
            p.map(|p| p.n.to_string()).unwrap_or_default(),
            opt_g9(p.map(|p| p.m)),
            opt_g9(p.map(|p| p.a)),
            opt_g9(p.map(|p| p.v)),
            opt_g9(Some(self.inputs.mu)),
            opt_g9(Some(self.inputs.nu)),
            opt_g9(Some(self.inputs.lambda)),
            self.inputs.shape.clone(),
            opt_g9(self.e_k.value),
            opt_g9(self.e_k.f_prime),
            reason(&self.e_k),
            opt_g9(self.e_g.value),
            opt_g9(self.e_g.s_star),
            reason(&self.e_g),
            opt_g9(self.e_2g.value),
            opt_g9(self.e_2g.s_star),
            reason(&self.e_2g),
            opt_g9(Some(self.e_k.wall_ms)),
            opt_g9(Some(self.e_g.wall_ms)),
            opt_g9(Some(self.e_2g.wall_ms)),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nboson_core::potential::exponential_shape;

    fn inputs(nu: f64) -> Inputs {
        Inputs {
            mu: 1.0,
            nu,
            lambda: 1.0,
            shape: "exp".into(),
            physical: None,
        }
    }

    #[test]
    fn supercritical_reason_past_the_merge() {
        let r = compute_bounds(&exponential_shape(), inputs(5.8), &KgOptions::default());
        assert_eq!(r.e_k.reason, Some(Reason::Supercritical));
        assert!((r.e_g.value.unwrap() + 0.904766).abs() < 5e-5);
        assert!(!r.has_failure());
    }

    #[test]
    fn weak_coupling_reasons() {
        let r = compute_bounds(&exponential_shape(), inputs(0.6), &KgOptions::default());
        assert_eq!(r.e_k.reason, Some(Reason::NoRoot));
        assert_eq!(r.e_g.reason, Some(Reason::NoStationaryMinimum));
        assert!(r.e_2g.value.is_some());
    }

    #[test]
    fn csv_row_has_header_width() {
        let r = compute_bounds(&exponential_shape(), inputs(1.0), &KgOptions::default());
        let row = r.csv_row();
        assert_eq!(row.matches(',').count(), BoundsReport::CSV_HEADER.matches(',').count());
        assert!(row.starts_with(",,,,1,1,1,exp,0.98038"));
        assert!(row.ends_with('\n'));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let r = compute_bounds(&exponential_shape(), inputs(2.5), &KgOptions::default());
        let text = serde_json::to_string(&r).unwrap();
        let back: BoundsReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(text.contains("\"reason\":null"));
    }

    #[test]
    fn reason_codes() {
        assert_eq!(
            serde_json::to_string(&Reason::NoStationaryMinimum).unwrap(),
            "\"no-stationary-minimum\""
        );
        assert_eq!(Reason::SolverFailure.code(), "solver-failure");
    }
}

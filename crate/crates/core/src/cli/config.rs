use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::{Domain, JCParams, SampledFunction};
use crate::modulation::{Envelope, Exponent, LatticeSpec, Measure};
use crate::specfun::{make_grid, QuadGrid};
use crate::uncertainty::{RegimeInput, WitnessConfig};

/// Composite Gauss–Legendre grid on `[−half_width, half_width]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSettings {
    pub half_width: f64,
    pub panels: usize,
    pub nodes_per_panel: usize,
}

impl GridSettings {
    pub fn build(&self) -> Result<QuadGrid> {
        make_grid(self.half_width, self.panels, self.nodes_per_panel)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grids {
    pub spatial: GridSettings,
    pub spectral: GridSettings,
}

impl Default for Grids {
    fn default() -> Self {
        Self {
            spatial: GridSettings { half_width: 8.0, panels: 32, nodes_per_panel: 16 },
            spectral: GridSettings { half_width: 20.0, panels: 40, nodes_per_panel: 16 },
        }
    }
}

/// `n` equispaced points from `lo` to `hi`, written `lo:hi:n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinSpace {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl LinSpace {
    pub fn single(x: f64) -> Self {
        Self { lo: x, hi: x, n: 1 }
    }

    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let h = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n)
            .map(|k| if k + 1 == self.n { self.hi } else { self.lo + h * k as f64 })
            .collect()
    }
}

impl std::str::FromStr for LinSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("expected lo:hi:n, got '{s}'"));
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if n == 0 || !lo.is_finite() || !hi.is_finite() || (n > 1 && hi <= lo) {
            return Err(bad());
        }
        Ok(Self { lo, hi, n })
    }
}

/// Parses `1`, `-2.5i`, `1+0.5i`, `0.5-1e-3i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::InvalidArgument(format!("cannot parse complex number '{s}'"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

/// Named test functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Family {
    Zero,
    Constant,
    /// `e^{−πx²}`.
    Gaussian,
    /// `e^{−x²} cosh(x)^{−ρ}`.
    GaussianEnvelope,
    /// `E_t` on the spatial side, `e^{−tλ²}` on the spectral side.
    HeatKernel { t: f64 },
}

impl Family {
    pub fn parse(name: &str, t: Option<f64>) -> Result<Self> {
        match name {
            "zero" => Ok(Family::Zero),
            "constant" => Ok(Family::Constant),
            "gaussian" => Ok(Family::Gaussian),
            "gaussian_envelope" | "gaussian-envelope" => Ok(Family::GaussianEnvelope),
            "heat_kernel" | "heat-kernel" => t
                .map(|t| Family::HeatKernel { t })
                .ok_or_else(|| Error::InvalidArgument("heat_kernel needs --t".into())),
            _ => Err(Error::InvalidArgument(format!("unknown family '{name}'"))),
        }
    }

    pub fn sample(&self, params: &JCParams, grid: &QuadGrid, domain: Domain) -> Result<SampledFunction> {
        let real = |f: &(dyn Fn(f64) -> f64 + Sync)| {
            SampledFunction::from_fn(grid.clone(), domain, |x| Complex64::new(f(x), 0.0))
        };
        match (*self, domain) {
            (Family::Zero, _) => Ok(real(&|_| 0.0)),
            (Family::Constant, _) => Ok(real(&|_| 1.0)),
            (Family::Gaussian, _) => Ok(real(&|x| (-std::f64::consts::PI * x * x).exp())),
            (Family::GaussianEnvelope, Domain::Spatial) => {
                Ok(real(&|x| crate::transform::gaussian_envelope(params, x)))
            }
            (Family::GaussianEnvelope, Domain::Spectral) => Err(Error::InvalidArgument(
                "gaussian_envelope is a spatial family".into(),
            )),
            (Family::HeatKernel { t }, Domain::Spatial) => crate::heat::heat_kernel(params, t, grid),
            (Family::HeatKernel { t }, Domain::Spectral) => {
                if !(t > 0.0) {
                    return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
                }
                Ok(real(&|l| (-t * l * l).exp()))
            }
        }
    }
}

/// Where transform input comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputSource {
    Family { family: Family },
    /// CSV with header `x,re,im` whose nodes match the configured grid.
    Csv { path: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    G,
    Phi,
    A,
    B,
    C,
    Density,
    Heat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Inverse,
    Roundtrip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Eigen,
    Plancherel,
    Roundtrip,
    Sandwich,
    Stft,
    DensityGrowth,
    All,
}

/// The resolved command with all of its options.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum CommandConfig {
    Eval {
        subject: Subject,
        lambda: Option<Complex64>,
        t: Option<f64>,
        points: LinSpace,
    },
    Transform {
        direction: Direction,
        input: InputSource,
        points: LinSpace,
    },
    Heat {
        t: f64,
        points: LinSpace,
    },
    Stft {
        family: Family,
        window_width: f64,
        x: LinSpace,
        w: LinSpace,
    },
    Modnorm {
        family: Family,
        envelope: Option<Envelope>,
        p: Exponent,
        q: Exponent,
        measure: Measure,
        truncations: Vec<f64>,
        lattice: LatticeSpec,
    },
    Verify {
        suite: Suite,
        lambdas: Vec<Complex64>,
        random_lambdas: usize,
        seed: u64,
    },
    Regime {
        input: RegimeInput,
        probe_t: Option<f64>,
        ladder: WitnessConfig,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Everything that determines the content of an output file. The output
/// path and the worker count are deliberately absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub alpha: f64,
    pub beta: f64,
    pub grids: Grids,
    pub format: OutputFormat,
    #[serde(flatten)]
    pub command: CommandConfig,
}

impl RunConfig {
    pub fn params(&self) -> Result<JCParams> {
        JCParams::new(self.alpha, self.beta)
    }

    /// Checks every setting before any computation starts.
    pub fn validate(&self) -> Result<()> {
        self.params()?;
        self.grids.spatial.build()?;
        self.grids.spectral.build()?;
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")))
            }
        };
        match &self.command {
            CommandConfig::Eval { subject, lambda, t, .. } => match subject {
                Subject::G | Subject::Phi if lambda.is_none() => {
                    Err(Error::InvalidArgument("eval G/phi needs --lambda".into()))
                }
                Subject::Heat => positive("t", t.unwrap_or(f64::NAN)),
                _ => Ok(()),
            },
            CommandConfig::Transform { input, direction, .. } => {
                if let InputSource::Family { family: Family::HeatKernel { t } } = input {
                    positive("t", *t)?;
                }
                if matches!(
                    (direction, input),
                    (Direction::Inverse, InputSource::Family { family: Family::GaussianEnvelope })
                ) {
                    return Err(Error::InvalidArgument(
                        "gaussian_envelope is a spatial family".into(),
                    ));
                }
                if *direction == Direction::Roundtrip && matches!(input, InputSource::Csv { .. }) {
                    return Err(Error::InvalidArgument("roundtrip takes a named family".into()));
                }
                Ok(())
            }
            CommandConfig::Heat { t, .. } => positive("t", *t),
            CommandConfig::Stft { window_width, x, w, family } => {
                positive("window width", *window_width)?;
                if let Family::HeatKernel { t } = family {
                    positive("t", *t)?;
                }
                if x.n < 2 || w.n < 2 {
                    return Err(Error::InvalidArgument("lattice axes need at least 2 points".into()));
                }
                Ok(())
            }
            CommandConfig::Modnorm { truncations, lattice, family, .. } => {
                if truncations.is_empty() {
                    return Err(Error::InvalidArgument("no truncations given".into()));
                }
                truncations.iter().try_for_each(|&t| positive("truncation", t))?;
                positive("w step", lattice.w_step)?;
                if let Family::HeatKernel { t } = family {
                    positive("t", *t)?;
                }
                Ok(())
            }
            CommandConfig::Verify { .. } => Ok(()),
            CommandConfig::Regime { input, probe_t, .. } => {
                if let Some(t) = probe_t {
                    positive("t", *t)?;
                }
                crate::uncertainty::classify(input).map(|_| ())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("1").unwrap(), c(1.0, 0.0));
        assert_eq!(parse_complex("1+0.5i").unwrap(), c(1.0, 0.5));
        assert_eq!(parse_complex("-2i").unwrap(), c(0.0, -2.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("3-i").unwrap(), c(3.0, -1.0));
        assert_eq!(parse_complex("1e-3-2.5e+1i").unwrap(), c(1e-3, -25.0));
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn linspace() {
        let l: LinSpace = "-3:3:61".parse().unwrap();
        let pts = l.points();
        assert_eq!(pts.len(), 61);
        assert_eq!(pts[30], 0.0);
        assert_eq!(pts[60], 3.0);
        assert!("3:-3:5".parse::<LinSpace>().is_err());
        assert!("0:1".parse::<LinSpace>().is_err());
    }
}

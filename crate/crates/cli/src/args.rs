//! Flag groups and value parsers shared by several subcommands.

use clap::Args;

use bazilevic_core::{ClassParams, Complex, DiskProbe, OperatorParams};

/// Parses `re`, `re+imi`, `re-imi`, `imi` or `i`.
pub fn parse_complex(s: &str) -> Result<Complex, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("invalid complex number '{s}' (expected re or re+imi)");
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex::new(re, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is neither leading nor part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |x: &str| -> Result<f64, String> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse::<f64>().map_err(|_| bad()),
        }
    };
    let (re, im) = match split {
        Some(i) => (body[..i].parse::<f64>().map_err(|_| bad())?, imag(&body[i..])?),
        None => (0.0, imag(body)?),
    };
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(Complex::new(re, im))
}

#[derive(Debug, Clone, Args)]
pub struct OperatorArgs {
    /// Operator power m.
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    /// λ >= 0.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// α as "re" or "re+imi"; 0 selects the Al-Oboudi reduction.
    #[arg(long, default_value = "0", value_parser = parse_complex)]
    pub alpha: Complex,
    /// β as "re" or "re+imi".
    #[arg(long, default_value = "1", value_parser = parse_complex)]
    pub beta: Complex,
}

impl OperatorArgs {
    pub fn params(&self) -> bazilevic_core::Result<OperatorParams> {
        OperatorParams::new(self.m, self.lambda, self.alpha, self.beta)
    }
}

#[derive(Debug, Clone, Args)]
pub struct ClassArgs {
    /// Boundary-rotation bound k >= 2.
    #[arg(long, default_value_t = 2.0)]
    pub k: f64,
    /// Order ρ in [0, 1).
    #[arg(long, default_value_t = 0.0)]
    pub rho: f64,
    /// Bazilevič exponent ϑ > 0.
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    /// γ as "re" or "re+imi".
    #[arg(long, default_value = "1", value_parser = parse_complex)]
    pub gamma: Complex,
}

impl ClassArgs {
    pub fn params(&self) -> bazilevic_core::Result<ClassParams> {
        ClassParams::new(self.k, self.rho, self.theta, self.gamma)
    }
}

#[derive(Debug, Clone, Args)]
pub struct ProbeArgs {
    /// Probe radii, strictly increasing in (0, 1).
    #[arg(long, default_value = "0.5,0.9,0.99", value_delimiter = ',')]
    pub radii: Vec<f64>,
    /// Angles per probe circle (>= 64).
    #[arg(long, default_value_t = 1024)]
    pub angles: usize,
    /// Verdict tolerance.
    #[arg(long, default_value_t = 1e-6)]
    pub margin_tol: f64,
}

impl ProbeArgs {
    pub fn probe(&self) -> bazilevic_core::Result<DiskProbe> {
        DiskProbe::new(self.radii.clone(), self.angles, self.margin_tol)
    }
}

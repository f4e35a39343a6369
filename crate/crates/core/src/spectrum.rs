//! Quantum numbers, closed-form bound-state energies and level-diagram data.
//!
//! Units are `hbar = c = 1`; the mass only sets the energy scale.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Relative tolerance for the algebraic invariants of [`SpectralParams`].
pub const SPECTRAL_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumNumbers {
    /// Dirac quantum number, nonzero.
    pub k: i32,
    /// Radial quantum number.
    pub n: u32,
    /// Coulomb coupling `Z e^2 / (hbar c)`, `0 < gamma < |k|`.
    pub gamma: f64,
    pub mass: f64,
}

impl QuantumNumbers {
    pub fn new(k: i32, n: u32, gamma: f64, mass: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroDiracNumber);
        }
        if !(gamma > 0.0 && gamma < k.unsigned_abs() as f64) {
            return Err(Error::CouplingOutOfRange { gamma, k });
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::InvalidMass(mass));
        }
        Ok(QuantumNumbers { k, n, gamma, mass })
    }

    pub fn abs_k(&self) -> u32 {
        self.k.unsigned_abs()
    }

    /// Total angular momentum `j = |k| - 1/2`.
    pub fn j(&self) -> f64 {
        self.abs_k() as f64 - 0.5
    }

    /// Principal quantum number `N = n + |k|`.
    pub fn principal(&self) -> u32 {
        self.n + self.abs_k()
    }

    pub fn s(&self) -> f64 {
        // validated in `new`
        s_of(self.k, self.gamma).unwrap_or(f64::NAN)
    }

    /// `n = 0` has a null upper component; the coupled first-order system
    /// then forces `k < 0`, so there is no `n = 0` level for `k > 0`.
    pub fn is_bound_state(&self) -> bool {
        self.n > 0 || self.k < 0
    }

    pub fn require_bound_state(&self) -> Result<()> {
        if self.is_bound_state() {
            Ok(())
        } else {
            Err(Error::NoGroundState { k: self.k })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralParams {
    pub s: f64,
    pub xi: f64,
    pub energy: f64,
    /// Irrep weight `nu = n + s = gamma / xi`.
    pub nu: f64,
    /// Casimir label `mu = s - 1`.
    pub mu: f64,
    /// `m + E`
    pub alpha1: f64,
    /// `m - E`
    pub alpha2: f64,
}

/// `s = sqrt(k^2 - gamma^2)`.
pub fn s_of(k: i32, gamma: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroDiracNumber);
    }
    let kf = k.unsigned_abs() as f64;
    if !(gamma > 0.0 && gamma < kf) {
        return Err(Error::CouplingOutOfRange { gamma, k });
    }
    Ok(((kf - gamma) * (kf + gamma)).sqrt())
}

/// `E = m [1 + gamma^2 / (n + s)^2]^{-1/2}` for a sector with radial number
/// `n_sector` and parameter `s_sector`.
pub fn sector_energy(n_sector: i64, s_sector: f64, gamma: f64, mass: f64) -> f64 {
    let x = gamma / (n_sector as f64 + s_sector);
    mass / (1.0 + x * x).sqrt()
}

pub fn energy_of(q: &QuantumNumbers) -> Result<SpectralParams> {
    let s = s_of(q.k, q.gamma)?;
    let nu = q.n as f64 + s;
    let xi = q.gamma / nu;
    let energy = q.mass / (1.0 + xi * xi).sqrt();
    Ok(SpectralParams {
        s,
        xi,
        energy,
        nu,
        mu: s - 1.0,
        alpha1: q.mass + energy,
        alpha2: binding_energy(xi, q.mass),
    })
}

/// `m - E` without cancellation: `m x / (r (1 + r))`, `r = sqrt(1 + x)`,
/// `x = xi^2`.
fn binding_energy(xi: f64, mass: f64) -> f64 {
    let x = xi * xi;
    let r = (1.0 + x).sqrt();
    mass * x / (r * (1.0 + r))
}

fn rel_close(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs())
}

/// Whether the lower component with `(n_lower, s)` and the upper component
/// with `(n_upper, s + 1)` give the same energy.
pub fn components_share_energy(q: &QuantumNumbers, n_lower: i64, n_upper: i64) -> bool {
    let s = q.s();
    let lower = sector_energy(n_lower, s, q.gamma, q.mass);
    let upper = sector_energy(n_upper, s + 1.0, q.gamma, q.mass);
    rel_close(lower, upper, SPECTRAL_RTOL)
}

/// Energy matching of the two spinor components with `n_s = n`,
/// `n_{s+1} = n - 1`. False for `n = 0`, whose upper component is null.
pub fn component_match_check(q: &QuantumNumbers) -> bool {
    q.n >= 1 && components_share_energy(q, q.n as i64, q.n as i64 - 1)
}

/// Checks every algebraic invariant of `p` against `q`.
pub fn params_consistent(q: &QuantumNumbers, p: &SpectralParams) -> bool {
    let k2 = (q.k as f64).powi(2);
    let m_over_e = q.mass / p.energy;
    rel_close(p.s * p.s + q.gamma * q.gamma, k2, SPECTRAL_RTOL)
        && rel_close(p.xi * p.xi + 1.0, m_over_e * m_over_e, SPECTRAL_RTOL)
        && rel_close(p.nu * p.xi, q.gamma, SPECTRAL_RTOL)
        && p.energy > 0.0
        && p.energy < q.mass
}

/// Relative deviation of the binding energy from the Balmer value
/// `m gamma^2 / (2 N^2)` at principal number `N`.
pub fn nonrel_limit_check(principal: u32, k: i32, gamma_small: f64) -> Result<f64> {
    let abs_k = k.unsigned_abs();
    if principal < abs_k || (principal == abs_k && k > 0) {
        return Err(Error::InvalidArgument(format!("no level with N = {principal} for k = {k}")));
    }
    let q = QuantumNumbers::new(k, principal - abs_k, gamma_small, 1.0)?;
    let p = energy_of(&q)?;
    let balmer = gamma_small * gamma_small / (2.0 * (principal as f64).powi(2));
    Ok((p.alpha2 - balmer).abs() / balmer)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub k: i32,
    pub n: u32,
    pub principal: u32,
    pub energy_over_m: f64,
    /// `n = 0`: the upper spinor component is null.
    pub dashed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArrowOrientation {
    Vertical,
    Horizontal,
}

/// A labelled transition between two levels `(k, N)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub orientation: ArrowOrientation,
    pub from: (i32, u32),
    pub to: (i32, u32),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramData {
    pub gamma: f64,
    pub k_max: u32,
    pub principal_max: u32,
    pub levels: Vec<Level>,
    pub arrows: Vec<Arrow>,
}

impl DiagramData {
    pub fn level(&self, k: i32, principal: u32) -> Option<&Level> {
        self.levels.iter().find(|l| l.k == k && l.principal == principal)
    }
}

pub const DIAGRAM_MAX: u32 = 20;

/// Energy levels grouped in `(-|k|, +|k|)` column pairs.
///
/// Each pair gets `Σ±` arrows between consecutive levels of the `-|k|`
/// column, `Ξ±` arrows in the `+|k|` column and `A±` arrows between the two
/// columns at equal `N`.
pub fn level_diagram(gamma: f64, k_max: u32, principal_max: u32) -> Result<DiagramData> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::CouplingOutOfRange { gamma, k: 1 });
    }
    if !(1..=DIAGRAM_MAX).contains(&k_max) || !(1..=DIAGRAM_MAX).contains(&principal_max) {
        return Err(Error::InvalidArgument(format!(
            "k_max and N_max must be in 1..={DIAGRAM_MAX}, got {k_max} and {principal_max}"
        )));
    }
    let mut levels = Vec::new();
    let mut arrows = Vec::new();
    for abs_k in 1..=k_max {
        for k in [-(abs_k as i32), abs_k as i32] {
            for principal in abs_k..=principal_max {
                let q = QuantumNumbers::new(k, principal - abs_k, gamma, 1.0)?;
                if !q.is_bound_state() {
                    continue;
                }
                let p = energy_of(&q)?;
                levels.push(Level {
                    k,
                    n: q.n,
                    principal,
                    energy_over_m: p.energy,
                    dashed: q.n == 0,
                });
            }
        }
        let (neg, pos) = (-(abs_k as i32), abs_k as i32);
        for principal in abs_k..principal_max {
            let up = principal + 1;
            arrows.push(vertical("Sigma+", neg, principal, up));
            arrows.push(vertical("Sigma-", neg, up, principal));
            if principal > abs_k {
                arrows.push(vertical("Xi+", pos, principal, up));
                arrows.push(vertical("Xi-", pos, up, principal));
            }
        }
        for principal in (abs_k + 1)..=principal_max {
            arrows.push(Arrow {
                label: "A-".into(),
                orientation: ArrowOrientation::Horizontal,
                from: (neg, principal),
                to: (pos, principal),
            });
            arrows.push(Arrow {
                label: "A+".into(),
                orientation: ArrowOrientation::Horizontal,
                from: (pos, principal),
                to: (neg, principal),
            });
        }
    }
    Ok(DiagramData { gamma, k_max, principal_max, levels, arrows })
}

fn vertical(label: &str, k: i32, from: u32, to: u32) -> Arrow {
    Arrow {
        label: label.into(),
        orientation: ArrowOrientation::Vertical,
        from: (k, from),
        to: (k, to),
    }
}

/// Largest `n_max` accepted by [`spectrum_table`].
pub const SPECTRUM_N_MAX: u32 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub n: u32,
    pub principal: u32,
    pub s: f64,
    pub xi: f64,
    pub e_over_m: f64,
}

/// Bound-state energies for `n = 0..=n_max`; `n = 0` is skipped for `k > 0`.
pub fn spectrum_table(gamma: f64, k: i32, n_max: u32, mass: f64) -> Result<Vec<SpectrumRow>> {
    if n_max > SPECTRUM_N_MAX {
        return Err(Error::InvalidArgument(format!("n_max {n_max} exceeds {SPECTRUM_N_MAX}")));
    }
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let q = QuantumNumbers::new(k, n, gamma, mass)?;
        if !q.is_bound_state() {
            continue;
        }
        let p = energy_of(&q)?;
        rows.push(SpectrumRow { n, principal: q.principal(), s: p.s, xi: p.xi, e_over_m: p.energy / mass });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn s_values() {
        // 30-digit reference values
        assert_relative_eq!(s_of(-1, 0.5).unwrap(), 0.866_025_403_784_438_6, max_relative = 1e-15);
        assert_relative_eq!(s_of(2, 0.5).unwrap(), 1.936_491_673_103_708_4, max_relative = 1e-15);
        assert_relative_eq!(s_of(1, 1e-9).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(s_of(-1, 1e-9).unwrap(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn s_domain() {
        assert_eq!(s_of(0, 0.5), Err(Error::ZeroDiracNumber));
        assert!(matches!(s_of(-1, 1.0), Err(Error::CouplingOutOfRange { .. })));
        assert!(matches!(s_of(-1, 1.5), Err(Error::CouplingOutOfRange { .. })));
        assert!(matches!(s_of(2, 0.0), Err(Error::CouplingOutOfRange { .. })));
        assert!(matches!(s_of(2, -0.1), Err(Error::CouplingOutOfRange { .. })));
    }

    #[test]
    fn energies() {
        let q = QuantumNumbers::new(-1, 0, 0.5, 1.0).unwrap();
        let p = energy_of(&q).unwrap();
        assert_relative_eq!(p.energy, 0.866_025_403_784_438_6, max_relative = 1e-15);
        // E(n = 0) = m s / |k|
        assert_relative_eq!(p.energy, p.s, max_relative = 1e-15);
        let q1 = QuantumNumbers::new(-1, 1, 0.5, 1.0).unwrap();
        assert_relative_eq!(energy_of(&q1).unwrap().energy, 0.965_925_826_289_068_3, max_relative = 1e-15);
        let free = QuantumNumbers::new(3, 4, 1e-9, 1.0).unwrap();
        assert_relative_eq!(energy_of(&free).unwrap().energy, 1.0, max_relative = 1e-15);
    }

    #[test]
    fn mass_is_a_scale() {
        let q = QuantumNumbers::new(2, 3, 0.9, 2.5).unwrap();
        let p = energy_of(&q).unwrap();
        let q1 = QuantumNumbers { mass: 1.0, ..q };
        assert_relative_eq!(p.energy / 2.5, energy_of(&q1).unwrap().energy, max_relative = 1e-15);
        assert!(params_consistent(&q, &p));
    }

    #[test]
    fn component_matching() {
        let q = QuantumNumbers::new(-1, 1, 0.5, 1.0).unwrap();
        assert!(component_match_check(&q));
        let q = QuantumNumbers::new(2, 3, 0.9, 1.0).unwrap();
        assert!(component_match_check(&q));
        assert!(!components_share_energy(&q, 3, 3));
        assert!(!component_match_check(&QuantumNumbers::new(-1, 0, 0.5, 1.0).unwrap()));
    }

    #[test]
    fn quantum_number_validation() {
        assert_eq!(QuantumNumbers::new(0, 0, 0.5, 1.0), Err(Error::ZeroDiracNumber));
        assert!(QuantumNumbers::new(-1, 0, 1.0, 1.0).is_err());
        assert!(QuantumNumbers::new(-1, 0, 0.5, 0.0).is_err());
        let q = QuantumNumbers::new(-3, 2, 1.4, 1.0).unwrap();
        assert_eq!(q.principal(), 5);
        assert_eq!(q.j(), 2.5);
        assert!(!QuantumNumbers::new(1, 0, 0.5, 1.0).unwrap().is_bound_state());
        assert!(QuantumNumbers::new(1, 1, 0.5, 1.0).unwrap().is_bound_state());
    }

    #[test]
    fn balmer_limit() {
        assert!(nonrel_limit_check(1, -1, 1e-3).unwrap() < 1e-2);
        assert!(nonrel_limit_check(2, 1, 1e-3).unwrap() < 1e-2);
        // leading correction is O(gamma^2)
        let d1 = nonrel_limit_check(1, -1, 1e-3).unwrap();
        let d2 = nonrel_limit_check(1, -1, 1e-4).unwrap();
        assert!((d1 / d2 - 100.0).abs() < 1.0, "{d1} {d2}");
        assert!(nonrel_limit_check(1, 1, 1e-3).is_err());
    }

    #[test]
    fn smallest_diagram() {
        let d = level_diagram(0.5, 1, 1).unwrap();
        assert_eq!(d.levels.len(), 1);
        let l = d.levels[0];
        assert_eq!((l.k, l.n, l.principal, l.dashed), (-1, 0, 1, true));
        assert!(d.level(1, 1).is_none());
    }

    #[test]
    fn diagram_arguments() {
        assert!(level_diagram(1.0, 2, 3).is_err());
        assert!(level_diagram(0.5, 0, 3).is_err());
        assert!(level_diagram(0.5, 2, 21).is_err());
    }
}

use nalgebra::DVector;

use super::operator::C64;
use crate::error::{Error, Result};

/// Truncated, renormalized coherent state.
#[derive(Debug, Clone)]
pub struct CoherentState {
    pub amplitudes: DVector<C64>,
    /// `e^{−|γ|²} |γ|^{2d} / d!`, the weight of the first discarded level.
    pub tail_bound: f64,
}

impl CoherentState {
    /// Whether the discarded tail is below `1e−12`.
    pub fn tail_ok(&self) -> bool {
        self.tail_bound < 1e-12
    }
}

pub fn coherent_state(gamma: C64, d: usize) -> Result<CoherentState> {
    if d == 0 {
        return Err(Error::InvalidBasis("coherent state needs d >= 1".into()));
    }
    let mut amps = Vec::with_capacity(d);
    // γⁿ/√(n!) built iteratively.
    let mut term = C64::new(1.0, 0.0);
    amps.push(term);
    for n in 1..d {
        term = term * gamma / (n as f64).sqrt();
        amps.push(term);
    }
    let mut v = DVector::from_vec(amps);
    let norm = v.norm();
    v.unscale_mut(norm);

    let r2 = gamma.norm_sqr();
    let ln_tail = -r2 + (d as f64) * r2.ln() - ln_factorial(d);
    let tail_bound = if r2 == 0.0 { 0.0 } else { ln_tail.exp() };
    Ok(CoherentState {
        amplitudes: v,
        tail_bound,
    })
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::annihilator;

    #[test]
    fn zero_amplitude_is_vacuum() {
        let s = coherent_state(C64::new(0.0, 0.0), 6).unwrap();
        assert_eq!(s.amplitudes[0], C64::new(1.0, 0.0));
        assert!(s.amplitudes.iter().skip(1).all(|z| z.norm() == 0.0));
        assert!(s.tail_ok());
    }

    #[test]
    fn lowering_expectation_matches_amplitude() {
        let s = coherent_state(C64::new(0.5, 0.0), 20).unwrap();
        let a = annihilator(20);
        let ev = a.expectation(&s.amplitudes).unwrap();
        assert!((ev - C64::new(0.5, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn norm_is_one_for_small_amplitudes() {
        for gamma in [C64::new(1.0, 0.0), C64::new(0.3, -0.9), C64::new(0.0, 1.0)] {
            for d in [20, 28] {
                let s = coherent_state(gamma, d).unwrap();
                assert!((s.amplitudes.norm() - 1.0).abs() < 1e-12);
                assert!(s.tail_ok());
            }
        }
    }

    #[test]
    fn tail_warning_for_large_amplitude() {
        let s = coherent_state(C64::new(4.0, 0.0), 10).unwrap();
        assert!(!s.tail_ok());
    }
}

use serde::Serialize;

use super::gamma15::{gamma15_identically_zero, Gamma15Verdict};
use crate::chart::{project_to_gamma_ambient, Chart, JetLength};
use crate::curvilinear::{generic_speciality, special_position_checks, SpecialityVerdict, SpotCheck};
use crate::error::{Error, Result};
use crate::exactlin::DEFAULT_SZ_TRIALS;
use crate::sample::{Sampler, DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::terracini::{
    osc2_regular, osc2_regular_coordinate, osc_variety_dim, secant_defect, CoordinateVerdict,
    DefectRecord, Osc2Verdict,
};

/// Length-3 speciality against identical vanishing of `D`, both on the
/// chart projected to `P^{3n+2}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceAudit {
    pub chart: String,
    pub projected: String,
    pub speciality: SpecialityVerdict,
    pub gamma15: Gamma15Verdict,
    pub consistent: bool,
}

pub fn equivalence_audit(c: &Chart, trials: usize, seed: u64) -> Result<EquivalenceAudit> {
    let p = project_to_gamma_ambient(c, seed)?;
    let speciality = generic_speciality(&p, JetLength::Three, trials, seed)?;
    let gamma15 = gamma15_identically_zero(&p, DEFAULT_SZ_TRIALS, seed)?;
    Ok(EquivalenceAudit {
        chart: c.label().to_string(),
        projected: p.label().to_string(),
        consistent: speciality.special == gamma15.identically_zero,
        speciality,
        gamma15,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineConfig {
    pub trials: usize,
    pub samples: usize,
    pub spot_checks: usize,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            trials: DEFAULT_SAMPLES,
            samples: DEFAULT_SAMPLES,
            spot_checks: 2,
            seed: DEFAULT_SEED,
        }
    }
}

/// Cross-checks that must agree on every chart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Consistency {
    /// Speciality agrees with `D ≡ 0`.
    pub equivalence: bool,
    /// The coordinate test implies generic 2-osculating regularity.
    pub coordinate_implies_regular: bool,
    /// `dim Osc_2 = 3n` exactly when 2-osculating regular.
    pub osc_dim_matches_regularity: bool,
    /// Speciality agrees with the hyperplane-system threshold.
    pub dual_threshold: bool,
    /// Hypotheses (i) and (ii) imply `δ_2 > 0`.
    pub theorem: bool,
}

impl Consistency {
    pub fn all(&self) -> bool {
        self.equivalence
            && self.coordinate_implies_regular
            && self.osc_dim_matches_regularity
            && self.dual_threshold
            && self.theorem
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DefectReport {
    pub chart: String,
    pub n: usize,
    pub r: usize,
    pub config: PipelineConfig,
    /// (i): special along a general length-3 scheme.
    pub speciality: SpecialityVerdict,
    pub spot_checks: Vec<SpotCheck>,
    /// (ii): 2-osculating regular.
    pub osc2: Osc2Verdict,
    pub osc2_coordinate: CoordinateVerdict,
    pub osc1_dim: usize,
    pub osc2_dim: usize,
    pub secant2: DefectRecord,
    pub gamma15: Gamma15Verdict,
    pub hypotheses_hold: bool,
    /// `Some(true)` when the hypotheses hold and `δ_2 > 0` as predicted.
    pub prediction_confirmed: Option<bool>,
    /// Defective although a hypothesis fails; recorded, never asserted.
    pub defective_without_hypotheses: bool,
    pub consistency: Consistency,
}

/// Runs both hypotheses of the 2-defectivity criterion and the secant
/// computation it predicts.
pub fn defect_pipeline(c: &Chart, cfg: &PipelineConfig) -> Result<DefectReport> {
    let (n, r) = (c.n(), c.r());
    if r < 3 * n + 2 {
        return Err(Error::AmbientTooSmall { r, need: 3 * n + 2 });
    }
    let seed = cfg.seed;
    let speciality = generic_speciality(c, JetLength::Three, cfg.trials, seed)?;
    let spot_checks = special_position_checks(c, JetLength::Three, cfg.spot_checks, seed)?;
    let osc2 = osc2_regular(c, cfg.trials, seed)?;
    let pt = Sampler::derived(seed, 0x434f_4f52).point(n);
    let osc2_coordinate = osc2_regular_coordinate(c, &pt)?;
    let osc1_dim = osc_variety_dim(c, 1, cfg.samples, seed)?;
    let osc2_dim = osc_variety_dim(c, 2, cfg.samples, seed)?;
    let secant2 = secant_defect(c, 2, cfg.samples, seed)?;
    let projected = project_to_gamma_ambient(c, seed)?;
    let gamma15 = gamma15_identically_zero(&projected, DEFAULT_SZ_TRIALS, seed)?;

    let hypotheses_hold = speciality.special && osc2.regular;
    let defective = secant2.defect > 0;
    let consistency = Consistency {
        equivalence: speciality.special == gamma15.identically_zero,
        coordinate_implies_regular: !osc2_coordinate.independent || osc2.regular,
        osc_dim_matches_regularity: (osc2_dim == 3 * n) == osc2.regular,
        dual_threshold: speciality.special == speciality.system_exceeds_threshold,
        theorem: !hypotheses_hold || defective,
    };
    Ok(DefectReport {
        chart: c.label().to_string(),
        n,
        r,
        config: *cfg,
        prediction_confirmed: hypotheses_hold.then_some(defective),
        defective_without_hypotheses: defective && !hypotheses_hold,
        speciality,
        spot_checks,
        osc2,
        osc2_coordinate,
        osc1_dim,
        osc2_dim,
        secant2,
        gamma15,
        hypotheses_hold,
        consistency,
    })
}

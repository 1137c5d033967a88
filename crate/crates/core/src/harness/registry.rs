//! The table of named checks.

use super::{closure, distinguished, modules, sequences, structural, systems};
use super::{CheckResult, Ctx, Status, Tally};
use crate::error::{DiagramError, Result};
use crate::validity::SystemKind;

/// The systems a check is stated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Any,
    PiN,
    M32,
}

impl Scope {
    fn admits(self, system: SystemKind) -> bool {
        match self {
            Scope::Any => true,
            Scope::PiN => system == SystemKind::OdPiN,
            Scope::M32 => system == SystemKind::OdM32,
        }
    }
}

/// One named check.
pub struct Check {
    pub id: &'static str,
    pub suite: &'static str,
    pub scope: Scope,
    /// Carrier-sensitive checks are reported, never failed.
    pub report_only: bool,
    pub run: fn(&Ctx) -> Result<Tally>,
}

impl Check {
    pub(crate) fn execute(&self, ctx: &Ctx) -> CheckResult {
        let mut res = CheckResult {
            check_id: self.id.to_string(),
            status: Status::Pass,
            universe_size: ctx.uni.len(),
            tuples: 0,
            violations: 0,
            counterexamples: Vec::new(),
            notes: Vec::new(),
        };
        if !self.scope.admits(ctx.params.system) {
            res.notes.push(format!("not applicable to {}", ctx.params));
            return res;
        }
        match (self.run)(ctx) {
            Ok(t) => {
                res.tuples = t.tuples;
                res.violations = t.violations;
                res.counterexamples = t.witnesses;
                res.notes = t.notes;
                res.status = if self.report_only {
                    Status::CarrierSensitiveReport
                } else if res.violations == 0 {
                    Status::Pass
                } else {
                    Status::Fail
                };
            }
            Err(e) => {
                res.status = Status::Fail;
                res.violations = 1;
                res.counterexamples.push(format!("error={e}"));
            }
        }
        res
    }
}

/// Suite names, in report order. `all` selects every check.
pub const SUITES: &[&str] = &["order", "module", "structural", "m32", "closure", "distinguished", "report"];

/// The check ids expected in the registry, one per line.
pub const MANIFEST: &str = include_str!("../../checks.manifest");

macro_rules! checks {
    ($($id:literal $suite:literal $scope:ident $report:literal $f:path;)*) => {
        &[$(Check { id: $id, suite: $suite, scope: Scope::$scope, report_only: $report, run: $f },)*]
    };
}

static REGISTRY: &[Check] = checks! {
    "order-total" "order" Any false modules::order_total;
    "order-wellfounded" "order" Any false modules::order_wellfounded;

    "diagram-roundtrip" "module" Any false modules::diagram_roundtrip;
    "diagram-ell-monotone" "module" Any false modules::diagram_ell_monotone;
    "diagram-q-in-sd" "module" Any false modules::diagram_q_in_sd;
    "diagram-normal-idempotent" "module" Any false modules::diagram_normal_idempotent;
    "subterm-set-order" "module" Any false modules::subterm_set_order;
    "validity-subdiagram-closed" "module" Any false modules::validity_subdiagram_closed;
    "validity-subcase-exclusive" "module" PiN false modules::validity_subcase_exclusive;
    "indexseq-lex-order" "module" PiN false modules::indexseq_lex_order;
    "indexseq-unitary-unique" "module" PiN false modules::indexseq_unitary_unique;
    "indexseq-e-antitone" "module" PiN false modules::indexseq_e_antitone;
    "decomp-null-identity" "module" PiN false modules::decomp_null_identity;
    "decomp-precs-null" "module" PiN false modules::decomp_precs_null;
    "decomp-lhds-base" "module" PiN false modules::decomp_lhds_base;
    "decomp-subseteq-def" "module" PiN false modules::decomp_subseteq_def;
    "decomp-prec-n-pl-irreflexive" "module" PiN false modules::decomp_prec_n_pl_irreflexive;
    "ops-wpart-total" "module" Any false modules::ops_wpart_total;
    "ops-stage-least" "module" Any false modules::ops_stage_least;
    "enum-canonical" "module" Any false modules::enum_canonical;
    "enum-oracle-agreement" "module" Any false modules::enum_oracle_agreement;

    "lemma-3.2.1" "structural" Any false structural::l3_2_1;
    "lemma-3.2.2" "structural" Any false structural::l3_2_2;
    "lemma-3.2.5" "structural" Any false structural::l3_2_5;
    "lemma-3.2.9" "structural" Any false structural::l3_2_9;
    "lemma-3.2.10" "structural" Any false structural::l3_2_10;
    "lemma-Od3" "structural" Any false structural::od3;
    "lemma-Npi11exist" "structural" Any false structural::npi11exist;
    "lemma-5.3.1" "structural" PiN false structural::l5_3_1;
    "lemma-5.3.2" "structural" PiN false structural::l5_3_2;
    "lemma-5.3.3" "structural" PiN false structural::l5_3_3;
    "lemma-5.3.4" "structural" PiN false structural::l5_3_4;
    "lemma-5.3.5" "structural" PiN false structural::l5_3_5;
    "lemma-5.3.6" "structural" PiN false structural::l5_3_6;
    "lemma-5.4.1" "structural" PiN false structural::l5_4_1;
    "lemma-5.4.2" "structural" PiN false structural::l5_4_2;
    "lemma-5.4.3" "structural" PiN false structural::l5_4_3;
    "lemma-5.4.5" "structural" PiN false structural::l5_4_5;
    "lemma-5.4.6" "structural" PiN false structural::l5_4_6;
    "lemma-5.4.7" "structural" PiN false structural::l5_4_7;
    "lemma-5.4.8" "structural" PiN false structural::l5_4_8;
    "lemma-5.4.9" "structural" PiN false structural::l5_4_9;
    "lemma-5.4.10" "structural" PiN false structural::l5_4_10;
    "lemma-N4aro" "structural" PiN false structural::n4aro;
    "lemma-5ast3" "structural" PiN false structural::l5ast3;
    "lemma-5ap12" "structural" PiN false structural::l5ap12;
    "lemma-5Si-2" "structural" PiN false structural::l5si_2;
    "lemma-5Si-1" "structural" PiN false structural::l5si_1;
    "lemma-3.23.1" "structural" PiN false structural::l3_23_1;
    "lemma-3.23.1+" "structural" PiN false structural::l3_23_1_plus;
    "lemma-rgpilhd" "structural" PiN false structural::rgpilhd;
    "lemma-precp.1" "structural" PiN false structural::precp_1;
    "lemma-precp.2" "structural" PiN false structural::precp_2;
    "lemma-precp.3" "structural" PiN false structural::precp_3;
    "lemma-piNbarstb" "structural" PiN false structural::pinbarstb;
    "lemma-barst" "structural" PiN false structural::barst;
    "lemma-astup.0" "structural" PiN false sequences::astup_0;
    "lemma-astup.1" "structural" PiN false sequences::astup_1;
    "lemma-astup.1.3" "structural" PiN false sequences::astup_1_3;
    "lemma-astup.1.4" "structural" PiN false sequences::astup_1_4;
    "lemma-astup.1.5" "structural" PiN false sequences::astup_1_5;
    "lemma-astup11" "structural" PiN false sequences::astup11;
    "lemma-lemB.1" "structural" PiN false sequences::lemb_1;
    "lemma-lemB.3" "structural" PiN false sequences::lemb_3;
    "lemma-E.0" "structural" PiN false sequences::e_0;
    "lemma-E.1" "structural" PiN false sequences::e_1;
    "lemma-E.2" "structural" PiN false sequences::e_2;
    "lemma-B" "structural" PiN false sequences::b;
    "lemma-Bprime" "structural" PiN false sequences::b_prime;
    "lemma-C+.1" "structural" PiN false sequences::c_plus_1;
    "lemma-C+.2" "structural" PiN false sequences::c_plus_2;

    "lemma-lexM32" "m32" M32 false systems::lex_m32;
    "lemma-N4aroM32" "m32" M32 false systems::n4aro_m32;
    "lemma-GWQpiM32" "m32" M32 false systems::gwq_pi_m32;
    "iterate-gamma32-closed" "m32" M32 false systems::gamma32_closed;

    "lemma-CX1" "closure" Any false closure::cx1;
    "lemma-KC" "closure" Any false closure::kc;
    "lemma-CX2.3" "closure" Any false closure::cx2_3;
    "lemma-CX2.4" "closure" Any false closure::cx2_4;
    "lemma-CX3.1" "closure" Any false closure::cx3_1;
    "lemma-CX3.2" "closure" Any false closure::cx3_2;
    "lemma-CX4.0" "closure" Any false closure::cx4_0;
    "lemma-CX4.1" "closure" Any false closure::cx4_1;
    "lemma-CX4.2" "closure" Any false closure::cx4_2;
    "lemma-CX4aro" "closure" Any false closure::cx4aro;
    "lemma-CX6" "closure" Any false closure::cx6;
    "ops-gamma-a-monotone" "closure" Any false closure::gamma_a_monotone;
    "persistence-G" "closure" Any false closure::persistence_g;
    "persistence-gamma2" "closure" Any false closure::persistence_gamma2;
    "persistence-gI" "closure" PiN false closure::persistence_gi;
    "persistence-gammaN" "closure" PiN false closure::persistence_gamma_n;
    "persistence-gamma32" "closure" M32 false closure::persistence_gamma32;
    "lemma-Gamma.0" "closure" Any false systems::gamma_0;
    "lemma-Gamma.1" "closure" Any false systems::gamma_1;
    "lemma-Gamma.5" "closure" Any false systems::gamma_5;
    "iterate-zero-stage0" "closure" Any false systems::zero_stage0;
    "lemma-adq0" "closure" PiN false systems::adq0;
    "lemma-adq1+" "closure" PiN false systems::adq1_plus;
    "lemma-GWQpiN" "closure" PiN false systems::gwq_pi_n;

    "lemma-5uv.0" "distinguished" PiN false distinguished::uv_0;
    "lemma-5uv.1" "distinguished" PiN false distinguished::uv_1;
    "lemma-5uv.3-1" "distinguished" PiN false distinguished::uv_3_1;
    "lemma-5uv.2" "distinguished" PiN false distinguished::uv_2;
    "distinguished-empty-set" "distinguished" PiN false distinguished::empty_set;
    "distinguished-top-layer" "distinguished" PiN false distinguished::top_layer;
    "lemma-wf5.3.3-1" "distinguished" PiN false distinguished::wf5_3_3_1;

    "lemma-Gamma.3" "report" Any true systems::gamma_3;
    "lemma-Gamma.4" "report" Any true systems::gamma_4;
    "theorem-AM" "report" Any true systems::theorem_am;
};

/// Every registered check, in report order.
pub fn registry() -> &'static [Check] {
    REGISTRY
}

/// Resolves a selector to check ids. A selector is a suite name, `all`, a
/// check id, or a comma-separated list of those.
pub fn suite_ids(selector: &str) -> Result<Vec<&'static str>> {
    let mut out: Vec<&'static str> = Vec::new();
    for part in selector.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let hits: Vec<&'static str> = if part == "all" {
            REGISTRY.iter().map(|c| c.id).collect()
        } else if SUITES.contains(&part) {
            REGISTRY.iter().filter(|c| c.suite == part).map(|c| c.id).collect()
        } else if let Some(c) = REGISTRY.iter().find(|c| c.id == part) {
            vec![c.id]
        } else {
            return Err(DiagramError::UnknownCheckId(part.to_string()));
        };
        for h in hits {
            if !out.contains(&h) {
                out.push(h);
            }
        }
    }
    if out.is_empty() {
        return Err(DiagramError::UnknownCheckId(selector.to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_matches_manifest() {
        let listed: Vec<&str> = MANIFEST
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let registered: Vec<&str> = REGISTRY.iter().map(|c| c.id).collect();
        assert_eq!(listed, registered);
    }

    #[test]
    fn ids_are_unique_and_suites_known() {
        let mut ids: Vec<&str> = REGISTRY.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), REGISTRY.len());
        assert!(REGISTRY.iter().all(|c| SUITES.contains(&c.suite)));
    }

    #[test]
    fn selectors() {
        assert_eq!(suite_ids("all").unwrap().len(), REGISTRY.len());
        assert_eq!(suite_ids("lemma-CX1,lemma-CX1").unwrap(), vec!["lemma-CX1"]);
        assert!(suite_ids("order").unwrap().contains(&"order-total"));
        assert!(matches!(suite_ids("lemma-nope"), Err(DiagramError::UnknownCheckId(_))));
    }
}

//! Named property checks evaluated over carriers.
//!
//! Every check is a universally quantified assertion whose free variables
//! range over the carrier (and, for closure-set checks, over families of
//! subsets). A check either passes, fails with up to ten replayable witnesses
//! written in the CLI grammar, or, for the carrier-sensitive ones, files a
//! report with its violation count.
//!
//! ```
//! use odpn::enumeration::{enumerate_fragment, GenConfig};
//! use odpn::harness::{run_suite, RunOptions, Status};
//! use odpn::SystemParams;
//!
//! let carrier = enumerate_fragment(&GenConfig::new(SystemParams::pi_n(4), 5)).unwrap();
//! let out = run_suite(&carrier, &["lemma-3.2.2"], &RunOptions::default()).unwrap();
//! assert_eq!(out[0].status, Status::Pass);
//! ```

mod arena;
mod closure;
mod distinguished;
mod modules;
mod registry;
mod sequences;
mod structural;
mod systems;

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::diagram::Diagram;
use crate::enumeration::Carrier;
use crate::error::{DiagramError, Result};
use crate::operators::{iterate, Operator, StageMap, Universe};
use crate::validity::{SystemKind, SystemParams};

pub use arena::{sub_carrier, Arena, Case, KTable};
pub use registry::{registry, suite_ids, Check, Scope, MANIFEST, SUITES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    CarrierSensitiveReport,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::CarrierSensitiveReport => "report",
        })
    }
}

/// The outcome of one check on one carrier.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub check_id: String,
    pub status: Status,
    pub universe_size: usize,
    /// Instances of the hypothesis that were examined.
    pub tuples: u64,
    pub violations: u64,
    /// The first few violating instances, in the CLI grammar.
    pub counterexamples: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckResult {
    /// One tab-separated record.
    pub fn record(&self) -> String {
        let mut s = format!(
            "{}\t{}\tuniverse={}\ttuples={}\tviolations={}",
            self.check_id, self.status, self.universe_size, self.tuples, self.violations
        );
        for n in &self.notes {
            s.push_str(&format!("\tnote={n}"));
        }
        for w in &self.counterexamples {
            s.push_str(&format!("\twitness={w}"));
        }
        s
    }
}

/// Renders a report, one record per line.
pub fn render(results: &[CheckResult]) -> String {
    let mut s = String::new();
    for r in results {
        s.push_str(&r.record());
        s.push('\n');
    }
    s
}

/// Whether any assertion check failed. Reports never count as failures.
pub fn any_failed(results: &[CheckResult]) -> bool {
    results.iter().any(|r| r.status == Status::Fail)
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    /// Above this carrier size, variables beyond the second are sampled.
    pub sample_above: usize,
    pub sample_size: usize,
    /// Size of the sub-carrier whose subsets are enumerated exhaustively.
    pub sub_carrier: usize,
    /// Number of seeded random subsets of the full carrier.
    pub random_subsets: usize,
    /// Elements probed per subset by the persistence checks on the full carrier.
    pub persistence_probes: usize,
    pub max_witnesses: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            sample_above: 2000,
            sample_size: 400,
            sub_carrier: 12,
            random_subsets: 200,
            persistence_probes: 24,
            max_witnesses: 10,
        }
    }
}

/// Accumulates the instances of one check.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub tuples: u64,
    pub violations: u64,
    pub witnesses: Vec<String>,
    pub notes: Vec<String>,
    limit: usize,
}

impl Tally {
    pub fn new(limit: usize) -> Self {
        Tally { limit, ..Default::default() }
    }

    /// Records one instance.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.tuples += 1;
        if !ok {
            self.fail(witness());
        }
    }

    /// Records one instance whose evaluation may itself fail.
    pub fn check_res(&mut self, ok: Result<bool>, witness: impl FnOnce() -> String) {
        match ok {
            Ok(b) => self.check(b, witness),
            Err(e) => {
                self.tuples += 1;
                self.fail(format!("{} error={e}", witness()));
            }
        }
    }

    fn fail(&mut self, w: String) {
        self.violations += 1;
        if self.witnesses.len() < self.limit {
            self.witnesses.push(w);
        }
    }

    pub fn note(&mut self, n: impl Into<String>) {
        let n = n.into();
        if !self.notes.contains(&n) {
            self.notes.push(n);
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.tuples += other.tuples;
        self.violations += other.violations;
        for w in other.witnesses {
            if self.witnesses.len() < self.limit {
                self.witnesses.push(w);
            }
        }
        for n in other.notes {
            self.note(n);
        }
    }
}

/// Shared state for the checks of one run.
pub struct Ctx {
    pub uni: Universe,
    pub params: SystemParams,
    pub opts: RunOptions,
    /// Indices of the `D^Q` elements.
    pub dq: Vec<usize>,
    /// Indices of the `D` elements.
    pub ds: Vec<usize>,
    stages: OnceLock<Result<StageMap>>,
    arenas: OnceLock<Result<Vec<Arena>>>,
}

impl Ctx {
    pub fn new(carrier: &Carrier, opts: RunOptions) -> Result<Self> {
        let uni = Universe::new(carrier)?;
        let dq = (0..uni.len()).filter(|&i| uni.elem(i).is_dq()).collect();
        let ds = (0..uni.len()).filter(|&i| uni.elem(i).is_d()).collect();
        Ok(Ctx { uni, params: carrier.params, opts, dq, ds, stages: OnceLock::new(), arenas: OnceLock::new() })
    }

    pub fn e(&self, i: usize) -> &Diagram {
        self.uni.elem(i)
    }

    pub fn n(&self) -> u32 {
        self.params.n
    }

    /// The largest quadruple index of the system.
    pub fn top(&self) -> u32 {
        self.params.top_index()
    }

    pub fn is_pin(&self) -> bool {
        self.params.system == SystemKind::OdPiN
    }

    pub fn tally(&self) -> Tally {
        Tally::new(self.opts.max_witnesses)
    }

    /// The values of a variable that is quantified after two others: every
    /// element up to `sample_above`, a size-stratified seeded sample beyond.
    pub fn third_var(&self, pool: &[usize], t: &mut Tally) -> Vec<usize> {
        if self.uni.len() <= self.opts.sample_above || pool.len() <= self.opts.sample_size {
            return pool.to_vec();
        }
        t.note(format!("sampled {} of {} seed={}", self.opts.sample_size, pool.len(), self.opts.seed));
        stratified(pool, self.opts.sample_size, self.opts.seed)
    }

    /// The stage map of the operator belonging to the carrier's system.
    pub fn stage_map(&self) -> Result<&StageMap> {
        self.stages
            .get_or_init(|| iterate(&system_operator(&self.uni)?))
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// The subset families: the exhaustive sub-carrier and the full carrier.
    pub fn arenas(&self) -> Result<&[Arena]> {
        self.arenas
            .get_or_init(|| arena::build(self))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(|e| e.clone())
    }
}

/// `gamma32` for the two-level system, `gammaN` for `Od(Pi_N)`, `gamma2` otherwise.
pub fn system_operator(uni: &Universe) -> Result<Operator<'_>> {
    use crate::operators::OpName;
    match uni.params().system {
        SystemKind::OdSuper => Operator::new(OpName::Gamma2, uni),
        _ => Operator::for_system(uni),
    }
}

/// Evenly spaced picks from a pool sorted by size, with a seeded offset.
pub(crate) fn stratified(pool: &[usize], k: usize, seed: u64) -> Vec<usize> {
    if pool.len() <= k {
        return pool.to_vec();
    }
    let step = pool.len() as f64 / k as f64;
    let offset = (seed % 997) as f64 / 997.0 * step;
    (0..k).map(|j| pool[((j as f64 * step + offset) as usize).min(pool.len() - 1)]).collect()
}

/// Runs the named checks on a carrier.
pub fn run_suite(carrier: &Carrier, ids: &[&str], opts: &RunOptions) -> Result<Vec<CheckResult>> {
    let checks = ids
        .iter()
        .map(|id| {
            registry()
                .iter()
                .find(|c| c.id == *id)
                .ok_or_else(|| DiagramError::UnknownCheckId(id.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    let ctx = Ctx::new(carrier, opts.clone())?;
    Ok(checks.par_iter().map(|c| c.execute(&ctx)).collect())
}

/// Runs every check of a suite (see [`suite_ids`]).
pub fn run_named_suite(carrier: &Carrier, suite: &str, opts: &RunOptions) -> Result<Vec<CheckResult>> {
    let ids = suite_ids(suite)?;
    run_suite(carrier, &ids, opts)
}

/// Renders a set of element indices as `{a, b, ...}`.
pub(crate) fn show_set(uni: &Universe, x: &crate::operators::Set) -> String {
    let parts: Vec<String> = x.ones().map(|i| uni.elem(i).to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

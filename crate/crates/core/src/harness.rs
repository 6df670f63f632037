//! Experiment runner: expands a JSON corpus description into graphs, runs the
//! configured checks on each, and assembles a deterministic report with a
//! certificate bundle.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::certificates::{verify, Certificate, StoredCertificate};
use crate::constructions::{
    build_counterexample, grotzsch, kneser, mycielski, random_graph, random_triangle_free, shift_graph, CrossRange,
    GadgetVariant,
};
use crate::error::{Error, Result, Verdict};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::invariants::{chi_local, chromatic_number_with_budget, clique_number_with_budget};
use crate::io::{graph_hash, parse_graph6, write_graph6};
use crate::iso::is_kd_starry_with_budget;
use crate::machinery::{
    check_stable_set_degree, find_spire_with_budget, find_x_split_with_budget, gyarfas_bound, gyarfas_path,
    StableSetOutcome,
};

/// First line of `report.csv`; bump the version whenever the columns change.
pub const REPORT_HEADER: &str = "# chibound report v1";

pub const REPORT_COLUMNS: [&str; 15] = [
    "index",
    "label",
    "graph_hash",
    "n",
    "m",
    "omega",
    "chi",
    "chi1",
    "chi2",
    "stable_set_degree",
    "x_split",
    "spire",
    "gyarfas",
    "starry",
    "certificates",
];

pub const GENERATORS: [&str; 13] = [
    "empty",
    "complete",
    "path",
    "cycle",
    "star",
    "petersen",
    "kneser",
    "grotzsch",
    "mycielski",
    "shift",
    "random",
    "random_triangle_free",
    "graph6",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    StableSetDegree,
    XSplit,
    Spire,
    Gyarfas,
    Starry,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub generator: String,
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
    /// One instance per seed for the random generators.
    #[serde(default)]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub expect: Option<Expectation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub omega: Option<usize>,
    pub chi: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleConfig {
    pub variant: GadgetVariant,
    pub k: usize,
    #[serde(default)]
    pub cross_range: CrossRange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    /// Node limit for each exact χ / ω computation.
    pub chi_nodes: Option<u64>,
    /// Node limit for each search.
    pub search_nodes: Option<u64>,
}

fn default_stable_samples() -> usize {
    8
}

fn default_one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub corpus: Vec<CorpusEntry>,
    #[serde(default)]
    pub checks: Vec<CheckKind>,
    /// `(k, d)` pairs for the starry check.
    #[serde(default)]
    pub starry: Vec<(usize, usize)>,
    #[serde(default)]
    pub counterexamples: Vec<CounterexampleConfig>,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default = "default_stable_samples")]
    pub stable_samples: usize,
    #[serde(default = "default_one")]
    pub spire_height: usize,
    #[serde(default = "default_one")]
    pub gyarfas_steps: usize,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: ExperimentConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Rejects unknown generators, missing parameters and bad parameter values.
    pub fn validate(&self) -> Result<()> {
        self.expand_corpus().map(|_| ())?;
        if self.spire_height == 0 {
            return Err(Error::Config("spire_height must be at least 1".into()));
        }
        if let Some(&(k, d)) = self.starry.iter().find(|&&(k, d)| k == 0 || d == 0) {
            return Err(Error::Config(format!(
                "starry parameters must be positive, got ({k}, {d})"
            )));
        }
        if self.checks.contains(&CheckKind::Starry) && self.starry.is_empty() {
            return Err(Error::Config("the starry check needs at least one (k, d) pair".into()));
        }
        Ok(())
    }

    /// The corpus in config order.
    pub fn expand_corpus(&self) -> Result<Vec<Instance>> {
        let mut out = Vec::new();
        for (i, entry) in self.corpus.iter().enumerate() {
            for (label, graph) in expand_entry(entry).map_err(|e| Error::Config(format!("corpus entry {i}: {e}")))? {
                out.push(Instance {
                    label,
                    graph,
                    expect: entry.expect,
                });
            }
        }
        Ok(out)
    }
}

impl CorpusEntry {
    /// The labelled graphs this entry stands for, one per seed for random generators.
    pub fn expand(&self) -> Result<Vec<(String, Graph)>> {
        expand_entry(self)
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub label: String,
    pub graph: Graph,
    pub expect: Option<Expectation>,
}

fn param_u64(entry: &CorpusEntry, name: &str) -> Result<u64> {
    entry
        .params
        .get(name)
        .ok_or_else(|| Error::arg(format!("generator {} needs parameter `{name}`", entry.generator)))?
        .as_u64()
        .ok_or_else(|| Error::arg(format!("parameter `{name}` must be a non-negative integer")))
}

fn param_usize(entry: &CorpusEntry, name: &str) -> Result<usize> {
    param_u64(entry, name).map(|x| x as usize)
}

fn param_f64(entry: &CorpusEntry, name: &str) -> Result<f64> {
    entry
        .params
        .get(name)
        .and_then(serde_json::Value::as_f64)
        .ok_or_else(|| {
            Error::arg(format!(
                "generator {} needs numeric parameter `{name}`",
                entry.generator
            ))
        })
}

fn label_of(entry: &CorpusEntry, seed: Option<u64>) -> String {
    let mut parts: Vec<String> = entry.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    if let Some(s) = seed {
        parts.push(format!("seed={s}"));
    }
    format!("{}({})", entry.generator, parts.join(","))
}

fn expand_entry(entry: &CorpusEntry) -> Result<Vec<(String, Graph)>> {
    let single = |g: Graph| Ok(vec![(label_of(entry, None), g)]);
    match entry.generator.as_str() {
        "empty" => single(Graph::empty(param_usize(entry, "n")?)),
        "complete" => single(Graph::complete(param_usize(entry, "n")?)),
        "path" => single(Graph::path(param_usize(entry, "n")?)),
        "cycle" => single(Graph::cycle(param_usize(entry, "n")?)?),
        "star" => single(Graph::star(param_usize(entry, "leaves")?)),
        "petersen" => single(kneser(5, 2)?),
        "kneser" => single(kneser(param_usize(entry, "n")?, param_usize(entry, "k")?)?),
        "grotzsch" => single(grotzsch()),
        "mycielski" => {
            // t-fold Mycielski tower starting from K2
            let t = param_usize(entry, "t")?;
            single((0..t).fold(Graph::complete(2), |g, _| mycielski(&g)))
        }
        "shift" => single(shift_graph(param_usize(entry, "n")?)?),
        "graph6" => {
            let text = entry
                .params
                .get("g6")
                .and_then(serde_json::Value::as_str)
                .ok_or_else(|| Error::arg("generator graph6 needs string parameter `g6`"))?;
            single(parse_graph6(text)?)
        }
        "random" | "random_triangle_free" => {
            if entry.seeds.is_empty() {
                return Err(Error::arg(format!(
                    "generator {} needs explicit seeds",
                    entry.generator
                )));
            }
            let (n, p) = (param_usize(entry, "n")?, param_f64(entry, "p")?);
            entry
                .seeds
                .iter()
                .map(|&seed| {
                    let g = if entry.generator == "random" {
                        random_graph(n, p, seed)?
                    } else {
                        random_triangle_free(n, p, seed)?
                    };
                    Ok((label_of(entry, Some(seed)), g))
                })
                .collect()
        }
        other => Err(Error::arg(format!(
            "unknown generator `{other}` (known: {})",
            GENERATORS.join(", ")
        ))),
    }
}

// ---------------------------------------------------------------- per-instance work

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub index: usize,
    pub label: String,
    pub graph_hash: String,
    pub n: usize,
    pub m: usize,
    pub omega: Option<usize>,
    pub chi: Option<usize>,
    pub chi1: Option<usize>,
    pub chi2: Option<usize>,
    pub stable_set_degree: String,
    pub x_split: String,
    pub spire: String,
    pub gyarfas: String,
    pub starry: String,
    pub certificates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub index: usize,
    pub label: String,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Default)]
struct InstanceOutcome {
    violations: Vec<Finding>,
    indeterminate: Vec<Finding>,
    certificates: Vec<(String, StoredCertificate)>,
    millis: u128,
}

struct Ctx<'a> {
    config: &'a ExperimentConfig,
    index: usize,
    label: &'a str,
    g: &'a Graph,
    out: InstanceOutcome,
}

impl Ctx<'_> {
    fn chi_budget(&self) -> Budget {
        Budget::unbounded().with_nodes(self.config.budgets.chi_nodes)
    }

    fn search_budget(&self) -> Budget {
        Budget::unbounded().with_nodes(self.config.budgets.search_nodes)
    }

    fn finding(&self, check: &str, detail: impl Into<String>) -> Finding {
        Finding {
            index: self.index,
            label: self.label.to_string(),
            check: check.to_string(),
            detail: detail.into(),
        }
    }

    fn violation(&mut self, check: &str, detail: impl Into<String>) {
        let f = self.finding(check, detail);
        self.out.violations.push(f);
    }

    fn indeterminate(&mut self, check: &str, e: &Error) -> String {
        let f = self.finding(check, e.to_string());
        self.out.indeterminate.push(f);
        "indeterminate".into()
    }

    /// Stores a certificate after re-verifying it; a failed re-check is a violation.
    fn certify(&mut self, check: &str, name: String, cert: Certificate) -> String {
        let file = format!("{:05}-{name}.json", self.index);
        if let Err(v) = verify(self.g, &cert) {
            self.violation(check, format!("certificate {file} fails re-validation: {v}"));
        }
        self.out
            .certificates
            .push((file.clone(), StoredCertificate::new(self.g, cert)));
        file
    }

    fn chi_of(&self, s: &VertexSet) -> Result<usize> {
        let (h, _) = self.g.induced_subgraph(s)?;
        Ok(chromatic_number_with_budget(&h, &self.chi_budget())?.color_count())
    }
}

/// Deterministic stable sets to probe the stable-set degree property with.
fn stable_samples(g: &Graph, count: usize, seed: u64) -> Vec<VertexSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut order: Vec<Vertex> = g.vertices().collect();
    for _ in 0..count {
        order.shuffle(&mut rng);
        let mut s = g.empty_set();
        for &v in &order {
            if !g.has_neighbor_in(v, &s) && rng.random_bool(0.7) {
                s.insert(v);
            }
        }
        if !s.is_empty() {
            out.push(s);
        }
    }
    out
}

fn run_instance(config: &ExperimentConfig, index: usize, inst: &Instance) -> (Row, InstanceOutcome) {
    let start = Instant::now();
    let g = &inst.graph;
    let mut ctx = Ctx {
        config,
        index,
        label: &inst.label,
        g,
        out: InstanceOutcome::default(),
    };
    let omega = match clique_number_with_budget(g, &ctx.chi_budget()) {
        Ok((w, _)) => Some(w),
        Err(e) => {
            ctx.indeterminate("omega", &e);
            None
        }
    };
    let chi = match chromatic_number_with_budget(g, &ctx.chi_budget()) {
        Ok(c) => Some(c.color_count()),
        Err(e) => {
            ctx.indeterminate("chi", &e);
            None
        }
    };
    let (chi1, chi2) = if chi.is_some() {
        (Some(chi_local(g, 1)), Some(chi_local(g, 2)))
    } else {
        (None, None)
    };
    if let Some(exp) = inst.expect {
        if let (Some(want), Some(got)) = (exp.omega, omega) {
            if want != got {
                ctx.violation("expect", format!("ω = {got}, expected {want}"));
            }
        }
        if let (Some(want), Some(got)) = (exp.chi, chi) {
            if want != got {
                ctx.violation("expect", format!("χ = {got}, expected {want}"));
            }
        }
    }
    let checks = &config.checks;
    let stable_set_degree = if checks.contains(&CheckKind::StableSetDegree) {
        stable_set_degree_check(&mut ctx, chi)
    } else {
        String::new()
    };
    let x_split = if checks.contains(&CheckKind::XSplit) {
        x_split_check(&mut ctx)
    } else {
        String::new()
    };
    let spire = if checks.contains(&CheckKind::Spire) {
        spire_check(&mut ctx)
    } else {
        String::new()
    };
    let gyarfas = if checks.contains(&CheckKind::Gyarfas) {
        gyarfas_check(&mut ctx)
    } else {
        String::new()
    };
    let starry = if checks.contains(&CheckKind::Starry) {
        starry_check(&mut ctx)
    } else {
        String::new()
    };
    ctx.out.millis = start.elapsed().as_millis();
    let row = Row {
        index,
        label: inst.label.clone(),
        graph_hash: graph_hash(g),
        n: g.vertex_count(),
        m: g.edge_count(),
        omega,
        chi,
        chi1,
        chi2,
        stable_set_degree,
        x_split,
        spire,
        gyarfas,
        starry,
        certificates: ctx.out.certificates.iter().map(|(f, _)| f.clone()).collect(),
    };
    (row, ctx.out)
}

fn stable_set_degree_check(ctx: &mut Ctx, chi: Option<usize>) -> String {
    let Some(chi) = chi else {
        return "skipped".into();
    };
    let samples = stable_samples(
        ctx.g,
        ctx.config.stable_samples,
        ctx.config.seed ^ (ctx.index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
    );
    let (mut holds, mut vacuous) = (0, 0);
    for x in &samples {
        for d in 0..chi {
            match check_stable_set_degree(ctx.g, x, d) {
                Ok(StableSetOutcome::Holds { .. }) => holds += 1,
                Ok(StableSetOutcome::HypothesesFail) => vacuous += 1,
                Ok(StableSetOutcome::Violated) => {
                    ctx.violation("stable_set_degree", format!("X = {x:?}, d = {d}"));
                }
                Err(e) => {
                    ctx.indeterminate("stable_set_degree", &e);
                }
            }
        }
    }
    format!("holds={holds} vacuous={vacuous}")
}

fn x_split_check(ctx: &mut Ctx) -> String {
    let g = ctx.g;
    // X: greedy maximal stable set in id order
    let mut x_ground = g.empty_set();
    for v in g.vertices() {
        if !g.has_neighbor_in(v, &x_ground) {
            x_ground.insert(v);
        }
    }
    match find_x_split_with_budget(g, &x_ground, 0, &ctx.search_budget()) {
        Ok(Some(split)) => {
            let chi = ctx.chi_of(&split.z_set).unwrap_or(1).max(1);
            ctx.certify(
                "x_split",
                "x_split".into(),
                Certificate::XSplit {
                    x_ground,
                    min_chi: chi - 1,
                    split,
                },
            );
            format!("found chi={chi}")
        }
        Ok(None) => "absent".into(),
        Err(e) => ctx.indeterminate("x_split", &e),
    }
}

fn spire_check(ctx: &mut Ctx) -> String {
    let d = ctx.config.spire_height;
    match find_spire_with_budget(ctx.g, d, 0, &ctx.search_budget()) {
        Ok(Some((spire, c))) => {
            let chi = ctx.chi_of(&c).unwrap_or(1).max(1);
            ctx.certify(
                "spire",
                "spire".into(),
                Certificate::Spire {
                    spire,
                    dominated: Some(c),
                    min_chi: Some(chi - 1),
                },
            );
            format!("found chi={chi}")
        }
        Ok(None) => "absent".into(),
        Err(e) => ctx.indeterminate("spire", &e),
    }
}

/// Start at a max-degree vertex and descend into the max-χ component next to it.
fn gyarfas_check(ctx: &mut Ctx) -> String {
    let g = ctx.g;
    let k = ctx.config.gyarfas_steps;
    let Some(x0) = g.vertices().max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))) else {
        return "precondition".into();
    };
    let rest = g.all_vertices().without(x0);
    let mut best: Option<(usize, VertexSet)> = None;
    for comp in g.components_within(&rest) {
        if g.has_neighbor_in(x0, &comp) {
            let c = match ctx.chi_of(&comp) {
                Ok(c) => c,
                Err(e) => return ctx.indeterminate("gyarfas", &e),
            };
            if best.as_ref().is_none_or(|(b, _)| c > *b) {
                best = Some((c, comp));
            }
        }
    }
    let Some((_, c_set)) = best else {
        return "precondition".into();
    };
    match gyarfas_path(g, &c_set, x0, k) {
        Ok(result) => {
            let (chi_c, chi1, chi_r) = gyarfas_bound(g, &c_set, &result);
            ctx.certify(
                "gyarfas",
                "gyarfas".into(),
                Certificate::Gyarfas { c_set, x0, k, result },
            );
            format!("ok chiC={chi_c} chi1={chi1} chiC'={chi_r}")
        }
        Err(Error::Argument(_)) => "precondition".into(),
        Err(e) if e.is_timeout() => ctx.indeterminate("gyarfas", &e),
        Err(e) => {
            ctx.violation("gyarfas", e.to_string());
            "error".into()
        }
    }
}

fn starry_check(ctx: &mut Ctx) -> String {
    let mut parts = Vec::new();
    for &(k, d) in &ctx.config.starry {
        let tag = match is_kd_starry_with_budget(ctx.g, k, d, &ctx.search_budget()) {
            Ok(Some(certificate)) => {
                ctx.certify(
                    "starry",
                    format!("starry-{k}-{d}"),
                    Certificate::Starry { k, d, certificate },
                );
                "yes"
            }
            Ok(None) => "no",
            Err(e) => {
                ctx.indeterminate("starry", &e);
                "indeterminate"
            }
        };
        parts.push(format!("({k},{d})={tag}"));
    }
    parts.join(" ")
}

// ---------------------------------------------------------------- report

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleRow {
    pub variant: GadgetVariant,
    pub k: usize,
    pub cross_range: CrossRange,
    pub outcome: String,
    pub graph6: Option<String>,
    pub chi_before: Option<usize>,
    pub chi_after: Option<usize>,
    pub centered_five_path: Option<bool>,
    pub properly_2_equipped: Option<bool>,
    pub plain_2_equipped: Option<bool>,
    pub log: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub certificates: usize,
    pub violations: usize,
    pub indeterminate: usize,
    pub violation_details: Vec<Finding>,
    pub indeterminate_details: Vec<Finding>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub rows: Vec<Row>,
    pub counterexamples: Vec<CounterexampleRow>,
    pub certificates: Vec<(String, StoredCertificate)>,
    pub summary: Summary,
    /// `(index, milliseconds)`; kept out of `report.csv` so reruns compare byte for byte.
    pub timings: Vec<(usize, u128)>,
    pub corpus: Vec<(usize, String)>,
}

impl Report {
    /// Nonzero exit status is warranted exactly when this is true.
    pub fn has_violations(&self) -> bool {
        self.summary.violations > 0
    }

    pub fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(REPORT_COLUMNS).map_err(io)?;
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.rows {
            w.write_record([
                r.index.to_string(),
                r.label.clone(),
                r.graph_hash.clone(),
                r.n.to_string(),
                r.m.to_string(),
                opt(r.omega),
                opt(r.chi),
                opt(r.chi1),
                opt(r.chi2),
                r.stable_set_degree.clone(),
                r.x_split.clone(),
                r.spire.clone(),
                r.gyarfas.clone(),
                r.starry.clone(),
                r.certificates.join(";"),
            ])
            .map_err(io)?;
        }
        let body = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(format!(
            "{REPORT_HEADER}\n{}",
            String::from_utf8(body).expect("csv output is utf-8")
        ))
    }

    /// Writes `report.csv`, `summary.json`, `counterexamples.json`, `timings.csv`,
    /// `certificates/*.json` and `corpus/*.g6` under `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir.join("certificates"))?;
        std::fs::create_dir_all(dir.join("corpus"))?;
        std::fs::write(dir.join("report.csv"), self.csv()?)?;
        std::fs::write(
            dir.join("summary.json"),
            serde_json::to_string_pretty(&self.summary)? + "\n",
        )?;
        std::fs::write(
            dir.join("counterexamples.json"),
            serde_json::to_string_pretty(&self.counterexamples)? + "\n",
        )?;
        let mut timings = String::from("index,millis\n");
        for (i, ms) in &self.timings {
            let _ = writeln!(timings, "{i},{ms}");
        }
        std::fs::write(dir.join("timings.csv"), timings)?;
        for (name, cert) in &self.certificates {
            std::fs::write(
                dir.join("certificates").join(name),
                serde_json::to_string_pretty(cert)? + "\n",
            )?;
        }
        for (i, g6) in &self.corpus {
            std::fs::write(dir.join("corpus").join(format!("{i:05}.g6")), format!("{g6}\n"))?;
        }
        Ok(())
    }
}

/// Runs every check over the corpus in parallel and reduces the results in corpus order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    let instances = config.expand_corpus()?;
    let outcomes: Vec<(Row, InstanceOutcome)> = instances
        .par_iter()
        .enumerate()
        .map(|(i, inst)| run_instance(config, i, inst))
        .collect();
    let counterexamples: Vec<(CounterexampleRow, Option<Finding>)> =
        config.counterexamples.par_iter().map(run_counterexample).collect();

    let mut rows = Vec::with_capacity(outcomes.len());
    let mut certificates = Vec::new();
    let mut violations = Vec::new();
    let mut indeterminate = Vec::new();
    let mut timings = Vec::new();
    for (row, out) in outcomes {
        timings.push((row.index, out.millis));
        certificates.extend(out.certificates);
        violations.extend(out.violations);
        indeterminate.extend(out.indeterminate);
        rows.push(row);
    }
    let mut cx_rows = Vec::new();
    for (row, finding) in counterexamples {
        violations.extend(finding);
        cx_rows.push(row);
    }
    let corpus = instances
        .iter()
        .enumerate()
        .map(|(i, inst)| (i, write_graph6(&inst.graph)))
        .collect();
    Ok(Report {
        summary: Summary {
            instances: rows.len(),
            certificates: certificates.len(),
            violations: violations.len(),
            indeterminate: indeterminate.len(),
            violation_details: violations,
            indeterminate_details: indeterminate,
        },
        rows,
        counterexamples: cx_rows,
        certificates,
        timings,
        corpus,
    })
}

fn run_counterexample(cfg: &CounterexampleConfig) -> (CounterexampleRow, Option<Finding>) {
    let mut row = CounterexampleRow {
        variant: cfg.variant,
        k: cfg.k,
        cross_range: cfg.cross_range,
        outcome: String::new(),
        graph6: None,
        chi_before: None,
        chi_after: None,
        centered_five_path: None,
        properly_2_equipped: None,
        plain_2_equipped: None,
        log: Vec::new(),
    };
    let finding = |detail: String| Finding {
        index: usize::MAX,
        label: format!("counterexample {:?} k={}", cfg.variant, cfg.k),
        check: "counterexample".into(),
        detail,
    };
    match build_counterexample(cfg.variant, cfg.k, None, cfg.cross_range) {
        Ok(r) => {
            let claim_fails = match cfg.variant {
                GadgetVariant::SplitPairs => r.checks.centered_five_path,
                GadgetVariant::SingleRow => r.checks.properly_2_equipped,
            };
            row.outcome = if claim_fails {
                "claim-failed".into()
            } else {
                "verified".into()
            };
            row.graph6 = Some(write_graph6(&r.graph));
            row.chi_before = Some(r.chi_before);
            row.chi_after = Some(r.chi_after);
            row.centered_five_path = Some(r.checks.centered_five_path);
            row.properly_2_equipped = Some(r.checks.properly_2_equipped);
            row.plain_2_equipped = Some(r.checks.plain_2_equipped);
            row.log = r.log;
            let f =
                claim_fails.then(|| finding("the special vertex has the structure the construction rules out".into()));
            (row, f)
        }
        Err(Error::ConstructionRefuted { gadgets, log }) => {
            row.outcome = format!("refuted after {gadgets} gadgets");
            row.log = log;
            (row, None)
        }
        Err(e) => {
            row.outcome = format!("error: {e}");
            let f = finding(e.to_string());
            (row, Some(f))
        }
    }
}

// ---------------------------------------------------------------- one-shot verification

/// Lemma ids accepted by [`verify_lemma`]; they match the certificate `type` tags.
pub const VERIFY_IDS: [&str; 7] = [
    "x_split",
    "equipment",
    "gyarfas",
    "spire",
    "cathedral",
    "band",
    "starry",
];

/// Checks a certificate (bare or stored with its graph) under the named lemma. Returns the
/// verdict and extra lines worth printing, such as the χ bound of a Gyárfás path.
pub fn verify_lemma(lemma: &str, graph: Option<&Graph>, cert_json: &str) -> Result<(Verdict, Vec<String>)> {
    if !VERIFY_IDS.contains(&lemma) {
        return Err(Error::arg(format!(
            "unknown lemma id `{lemma}` (known: {})",
            VERIFY_IDS.join(", ")
        )));
    }
    let value: serde_json::Value = serde_json::from_str(cert_json)?;
    let (g, cert) = if value.get("graph").is_some() {
        let stored: StoredCertificate = serde_json::from_value(value)?;
        if let Err(v) = stored.verify()? {
            return Ok((Err(v), Vec::new()));
        }
        (parse_graph6(&stored.graph)?, stored.certificate)
    } else {
        let g = graph.ok_or_else(|| Error::arg("a bare certificate needs --graph"))?;
        (g.clone(), serde_json::from_value::<Certificate>(value)?)
    };
    if cert.kind() != lemma {
        return Err(Error::arg(format!(
            "certificate has type `{}`, not `{lemma}`",
            cert.kind()
        )));
    }
    let verdict = verify(&g, &cert);
    let mut notes = Vec::new();
    if let (Ok(()), Certificate::Gyarfas { c_set, k, result, .. }) = (&verdict, &cert) {
        let (chi_c, chi1, chi_r) = gyarfas_bound(&g, c_set, result);
        notes.push(format!("χ(C′) = {chi_r} ≥ χ(C) − k·χ¹(G) = {chi_c} − {k}·{chi1}"));
    }
    Ok((verdict, notes))
}

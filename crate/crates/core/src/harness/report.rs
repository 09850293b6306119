use std::collections::BTreeMap;
use std::sync::Mutex;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::{fuzz_case, run_case, AccuracyClaim, Adapter, Outcome, Request, Response, VerdictKind};
use crate::suite::{value_to_json, TestCase, TestSuite, TestValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub claim: AccuracyClaim,
    /// Fuzz samples per case; 0 disables fuzzing.
    pub fuzz: usize,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { claim: AccuracyClaim::Tight, fuzz: 0, seed: 0, jobs: 1 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseReport {
    pub suite: String,
    pub index: usize,
    pub function: String,
    pub kind: VerdictKind,
    pub detail: String,
    pub computed: Option<Value>,
    pub expected_tight: Value,
    pub expected_accurate: Option<Value>,
}

/// Results of a run. Holds nothing that varies between identical runs, so
/// its JSON is reproducible byte for byte.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub adapter: String,
    pub claim: AccuracyClaim,
    pub seed: u64,
    pub fuzz: usize,
    pub cases: Vec<CaseReport>,
}

impl Report {
    pub fn counts(&self) -> BTreeMap<VerdictKind, usize> {
        let mut m = BTreeMap::new();
        for c in &self.cases {
            *m.entry(c.kind).or_insert(0) += 1;
        }
        m
    }

    pub fn count(&self, kind: VerdictKind) -> usize {
        self.cases.iter().filter(|c| c.kind == kind).count()
    }

    pub fn counts_by_function(&self) -> BTreeMap<&str, BTreeMap<VerdictKind, usize>> {
        let mut m: BTreeMap<&str, BTreeMap<VerdictKind, usize>> = BTreeMap::new();
        for c in &self.cases {
            *m.entry(&c.function).or_default().entry(c.kind).or_insert(0) += 1;
        }
        m
    }

    /// No fail or error verdicts.
    pub fn success(&self) -> bool {
        !self.cases.iter().any(|c| c.kind.is_failure())
    }

    pub fn to_json(&self) -> Value {
        let named = |m: &BTreeMap<VerdictKind, usize>| -> Map<String, Value> {
            m.iter().map(|(k, v)| (k.name().to_string(), (*v).into())).collect()
        };
        let by_function: Map<String, Value> =
            self.counts_by_function().iter().map(|(f, m)| (f.to_string(), Value::Object(named(m)))).collect();
        let cases: Vec<Value> = self
            .cases
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("suite".into(), c.suite.clone().into());
                m.insert("index".into(), c.index.into());
                m.insert("function".into(), c.function.clone().into());
                m.insert("verdict".into(), c.kind.name().into());
                m.insert("detail".into(), c.detail.clone().into());
                m.insert("computed".into(), c.computed.clone().unwrap_or(Value::Null));
                m.insert("expected_tight".into(), c.expected_tight.clone());
                m.insert("expected_accurate".into(), c.expected_accurate.clone().unwrap_or(Value::Null));
                Value::Object(m)
            })
            .collect();
        json!({
            "adapter": self.adapter,
            "claim": self.claim.name(),
            "seed": self.seed,
            "fuzz": self.fuzz,
            "summary": {
                "total": self.cases.len(),
                "verdicts": named(&self.counts()),
                "functions": by_function,
            },
            "cases": cases,
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
        s.push('\n');
        s
    }

    /// JUnit XML: one test suite per input file, one test case per case.
    pub fn to_junit(&self) -> String {
        let mut by_suite: Vec<(&str, Vec<&CaseReport>)> = Vec::new();
        for c in &self.cases {
            match by_suite.last_mut() {
                Some((name, list)) if *name == c.suite => list.push(c),
                _ => by_suite.push((&c.suite, vec![c])),
            }
        }
        let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let failures = self.cases.iter().filter(|c| matches!(c.kind, VerdictKind::FailUnsound | VerdictKind::FailInaccurate)).count();
        let errors = self.count(VerdictKind::Error);
        let skipped = self.count(VerdictKind::SkipUnsupported);
        out += &format!(
            "<testsuites name=\"{}\" tests=\"{}\" failures=\"{failures}\" errors=\"{errors}\" skipped=\"{skipped}\">\n",
            xml_escape(&self.adapter),
            self.cases.len()
        );
        for (name, cases) in by_suite {
            let count = |f: fn(&&&CaseReport) -> bool| cases.iter().filter(f).count();
            out += &format!(
                "  <testsuite name=\"{}\" tests=\"{}\" failures=\"{}\" errors=\"{}\" skipped=\"{}\">\n",
                xml_escape(name),
                cases.len(),
                count(|c| matches!(c.kind, VerdictKind::FailUnsound | VerdictKind::FailInaccurate)),
                count(|c| c.kind == VerdictKind::Error),
                count(|c| c.kind == VerdictKind::SkipUnsupported),
            );
            for c in cases {
                let tag = format!("case[{}] {}", c.index, c.function);
                let open = format!("    <testcase classname=\"{}\" name=\"{}\"", xml_escape(name), xml_escape(&tag));
                let body = match c.kind {
                    k if k.is_pass() => None,
                    VerdictKind::SkipUnsupported => Some(format!("<skipped message=\"{}\"/>", xml_escape(&c.detail))),
                    VerdictKind::Error => Some(format!("<error message=\"{}\"/>", xml_escape(&c.detail))),
                    k => Some(format!("<failure type=\"{}\" message=\"{}\"/>", k.name(), xml_escape(&c.detail))),
                };
                match body {
                    None => out += &format!("{open}/>\n"),
                    Some(b) => out += &format!("{open}>\n      {b}\n    </testcase>\n"),
                }
            }
            out += "  </testsuite>\n";
        }
        out += "</testsuites>\n";
        out
    }
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c if (c as u32) < 0x20 && !matches!(c, '\t' | '\n' | '\r') => out.push_str(&format!("&#x{:x};", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Serializes calls to an adapter that cannot take overlapping ones.
struct Serialized<'a> {
    inner: &'a dyn Adapter,
    lock: Mutex<()>,
}

impl Adapter for Serialized<'_> {
    fn identity(&self) -> String {
        self.inner.identity()
    }

    fn call(&self, request: &Request) -> Response {
        let _guard = self.lock.lock().unwrap_or_else(|e| e.into_inner());
        self.inner.call(request)
    }
}

/// The fuzz seed of one case, mixed from the run seed and the case's
/// position so that results do not depend on scheduling.
pub(crate) fn case_seed(seed: u64, suite: usize, index: usize) -> u64 {
    let mut z = seed ^ (suite as u64).wrapping_mul(0xd1b5_4a32_d192_ed03) ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn run_suite(suite: &TestSuite, adapter: &dyn Adapter, opts: &RunOptions) -> Report {
    run_suites(std::slice::from_ref(suite), adapter, opts)
}

/// Runs every case of every suite; reports keep input order whatever the
/// number of jobs.
pub fn run_suites(suites: &[TestSuite], adapter: &dyn Adapter, opts: &RunOptions) -> Report {
    let serialized = Serialized { inner: adapter, lock: Mutex::new(()) };
    let adapter: &dyn Adapter = if adapter.is_serial() { &serialized } else { adapter };
    let work: Vec<(usize, &TestSuite, usize, &TestCase)> = suites
        .iter()
        .enumerate()
        .flat_map(|(s, suite)| suite.cases.iter().enumerate().map(move |(i, c)| (s, suite, i, c)))
        .collect();
    let judge = |&(s, suite, i, c): &(usize, &TestSuite, usize, &TestCase)| {
        let outcome = if opts.fuzz > 0 {
            fuzz_case(c, adapter, opts.claim, opts.fuzz, case_seed(opts.seed, s, i)).expect("fuzz count is positive")
        } else {
            run_case(c, adapter, opts.claim)
        };
        case_report(&suite.source_name, i, c, outcome)
    };
    let cases = if opts.jobs <= 1 {
        work.iter().map(judge).collect()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build() {
            Ok(pool) => pool.install(|| work.par_iter().map(judge).collect()),
            Err(_) => work.iter().map(judge).collect(),
        }
    };
    Report { adapter: adapter.identity(), claim: opts.claim, seed: opts.seed, fuzz: opts.fuzz, cases }
}

fn case_report(suite: &str, index: usize, c: &TestCase, outcome: Outcome) -> CaseReport {
    let format = c.format();
    let render = |v: &TestValue| value_to_json(v, format);
    CaseReport {
        suite: suite.to_string(),
        index,
        function: c.function.clone(),
        kind: outcome.verdict.kind,
        detail: outcome.verdict.detail,
        computed: outcome.computed.as_ref().map(render),
        expected_tight: render(&c.tight),
        expected_accurate: c.accurate.as_ref().map(render),
    }
}

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `sets = [W, K]` near, `images = [f(W), f(K)]` far.
    SubsetPair,
    /// `sets = [A1, B1, A2, B2]`: `A1 × B1` near `A2 × B2`, images far.
    RectanglePair,
    /// `sets = [[a], [b]]` with a common image.
    NotInjective,
    /// `images = [[y]]` with `y` outside the range.
    NotSurjective,
    /// `sets = [F]` closed, `images = [image, closure(image)]`.
    NotClosed,
    /// `sets = [A]`, `images = [h(cl A), cl(h A)]` with the first not
    /// contained in the second.
    Functoriality,
    /// `sets = [[ε]]`: the map is a homeomorphism but ε lacks the inverse.
    NotInvertible,
}

/// Minimal counterexample for a failed check, in element labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub map: String,
    pub kind: WitnessKind,
    pub sets: Vec<Vec<String>>,
    pub images: Vec<Vec<String>>,
}

impl Witness {
    pub fn render(&self) -> String {
        let set = |s: &Vec<String>| format!("{{{}}}", s.join(","));
        let sets: Vec<String> = self.sets.iter().map(set).collect();
        let images: Vec<String> = self.images.iter().map(set).collect();
        match self.kind {
            WitnessKind::SubsetPair => format!(
                "{}: {} near {} but images {} far {}",
                self.map, sets[0], sets[1], images[0], images[1]
            ),
            WitnessKind::RectanglePair => format!(
                "{}: {}x{} near {}x{} but images {} far {}",
                self.map, sets[0], sets[1], sets[2], sets[3], images[0], images[1]
            ),
            WitnessKind::NotInjective => {
                format!(
                    "{}: not injective, {} and {} both map to {}",
                    self.map, sets[0], sets[1], images[0]
                )
            }
            WitnessKind::NotSurjective => format!("{}: not surjective, {} not hit", self.map, images[0]),
            WitnessKind::NotClosed => format!(
                "{}: {} closed but image {} has closure {}",
                self.map, sets[0], images[0], images[1]
            ),
            WitnessKind::Functoriality => format!(
                "{}: A = {}, h(cl A) = {} not inside cl(h A) = {}",
                self.map, sets[0], images[0], images[1]
            ),
            WitnessKind::NotInvertible => {
                format!(
                    "{}: homeomorphism for {} but the element is not invertible on that side",
                    self.map, sets[0]
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DetailValue {
    Text(String),
    Labels(Vec<String>),
    Flag(bool),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub pairs_examined: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub detail: BTreeMap<String, DetailValue>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn new(name: &str) -> Self {
        CheckResult {
            name: name.to_string(),
            verdict: Verdict::Pass,
            witness: None,
            pairs_examined: 0,
            detail: BTreeMap::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn skipped(name: &str, reason: impl Into<String>) -> Self {
        let mut r = Self::new(name);
        r.verdict = Verdict::Skipped;
        r.note("reason", DetailValue::Text(reason.into()));
        r
    }

    pub fn fail_with(&mut self, witness: Witness) {
        self.verdict = Verdict::Fail;
        self.witness = Some(witness);
    }

    pub fn note(&mut self, key: &str, value: DetailValue) {
        self.detail.insert(key.to_string(), value);
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn labels(&self, key: &str) -> Option<&[String]> {
        match self.detail.get(key) {
            Some(DetailValue::Labels(l)) => Some(l),
            _ => None,
        }
    }
}

/// Outcome of a suite, in registry order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub structure: String,
    pub mode: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn any_fail(&self) -> bool {
        self.checks.iter().any(CheckResult::failed)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn verdicts(&self) -> Vec<(String, Verdict)> {
        self.checks.iter().map(|c| (c.name.clone(), c.verdict)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Human-readable listing; includes elapsed times.
    pub fn render(&self) -> String {
        let mut out = format!("{} [{} mode]\n", self.structure, self.mode);
        for c in &self.checks {
            let verdict = match c.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
                Verdict::Skipped => "skipped",
            };
            let _ = writeln!(
                out,
                "  {:<20} {:<8} {:>12} pairs  {:>9.3?}",
                c.name, verdict, c.pairs_examined, c.elapsed
            );
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "      witness  {}", w.render());
            }
            for (k, v) in &c.detail {
                let v = match v {
                    DetailValue::Text(t) => t.clone(),
                    DetailValue::Labels(l) => format!("{{{}}}", l.join(",")),
                    DetailValue::Flag(b) => b.to_string(),
                };
                let _ = writeln!(out, "      {k:<9} {v}");
            }
        }
        out
    }
}

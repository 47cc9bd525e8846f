//! Result documents and their text and JSON renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::interp::PInterpretation;
use crate::interval::format_prob;
use crate::prefs::{RankIssue, RankingResult, SatisfactionIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub formula: String,
    pub interval: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnswerSetDoc {
    pub id: String,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexDoc {
    Index(usize),
    Irrelevant(String),
}

impl From<SatisfactionIndex> for IndexDoc {
    fn from(i: SatisfactionIndex) -> Self {
        match i {
            SatisfactionIndex::Index(i) => IndexDoc::Index(i),
            SatisfactionIndex::Irrelevant => IndexDoc::Irrelevant("irr".into()),
        }
    }
}

impl std::fmt::Display for IndexDoc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IndexDoc::Index(i) => write!(f, "{i}"),
            IndexDoc::Irrelevant(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatisfactionEntry {
    pub set: String,
    pub rule: String,
    pub index: IndexDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankingDoc {
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strata: Option<Vec<Vec<String>>>,
    pub undominated: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDoc {
    pub first: String,
    pub second: String,
    pub issue: RankIssue,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground: Option<String>,
    pub answer_sets: Vec<AnswerSetDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub satisfaction: Option<Vec<SatisfactionEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranking: Option<RankingDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incomparable_pairs: Option<Vec<PairDoc>>,
}

pub fn set_id(i: usize) -> String {
    format!("h{}", i + 1)
}

pub fn rule_id(i: usize) -> String {
    format!("r{}", i + 1)
}

pub fn answer_set_docs(sets: &[PInterpretation]) -> Vec<AnswerSetDoc> {
    sets.iter()
        .enumerate()
        .map(|(i, h)| AnswerSetDoc {
            id: set_id(i),
            entries: h
                .iter()
                .map(|(l, v)| Entry { formula: l.to_string(), interval: [format_prob(v.lower()), format_prob(v.upper())] })
                .collect(),
        })
        .collect()
}

pub fn satisfaction_docs(table: &[Vec<SatisfactionIndex>]) -> Vec<SatisfactionEntry> {
    table
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter().enumerate().map(move |(j, idx)| SatisfactionEntry {
                set: set_id(i),
                rule: rule_id(j),
                index: (*idx).into(),
            })
        })
        .collect()
}

pub fn ranking_docs(mode: &str, result: &RankingResult) -> (RankingDoc, Vec<PairDoc>) {
    let ids = |v: &[usize]| v.iter().map(|&i| set_id(i)).collect::<Vec<_>>();
    let doc = RankingDoc {
        mode: mode.to_string(),
        strata: result.strata.as_ref().map(|s| s.iter().map(|c| ids(c)).collect()),
        undominated: ids(&result.undominated),
    };
    let pairs = result
        .partial_report
        .iter()
        .map(|p| PairDoc { first: set_id(p.first), second: set_id(p.second), issue: p.issue })
        .collect();
    (doc, pairs)
}

fn interval_text(iv: &[String; 2]) -> String {
    if iv[0] == iv[1] {
        iv[0].clone()
    } else {
        format!("[{},{}]", iv[0], iv[1])
    }
}

fn issue_text(issue: RankIssue) -> &'static str {
    match issue {
        RankIssue::Incomparable => "incomparable",
        RankIssue::Cycle => "cycle",
        RankIssue::EqualityConflict => "equality conflict",
    }
}

fn text(doc: &OutputDocument) -> String {
    let mut s = String::new();
    if let Some(g) = &doc.ground {
        s.push_str("% ground program\n");
        s.push_str(g);
        if !g.ends_with('\n') {
            s.push('\n');
        }
    }
    if doc.answer_sets.is_empty() {
        s.push_str("no answer sets\n");
    }
    for a in &doc.answer_sets {
        let entries: Vec<String> = a.entries.iter().map(|e| format!("{}:{}", e.formula, interval_text(&e.interval))).collect();
        let _ = writeln!(s, "{} = {{{}}}", a.id, entries.join(", "));
    }
    if let Some(table) = &doc.satisfaction {
        let rules: Vec<&str> = {
            let mut r: Vec<&str> = Vec::new();
            for e in table {
                if !r.contains(&e.rule.as_str()) {
                    r.push(&e.rule);
                }
            }
            r
        };
        let _ = writeln!(s, "\n{:<6}{}", "", rules.iter().map(|r| format!("{r:<5}")).collect::<String>().trim_end());
        for a in &doc.answer_sets {
            let row: String =
                table.iter().filter(|e| e.set == a.id).map(|e| format!("{:<5}", e.index.to_string())).collect();
            let _ = writeln!(s, "{:<6}{}", a.id, row.trim_end());
        }
    }
    if let Some(r) = &doc.ranking {
        let _ = writeln!(s, "\nranking ({})", r.mode);
        match &r.strata {
            Some(strata) => {
                for (i, stratum) in strata.iter().enumerate() {
                    let _ = writeln!(s, "stratum {}: {}", i + 1, stratum.join(" = "));
                }
            }
            None => {
                s.push_str("no total ranking\n");
                let _ = writeln!(s, "undominated: {}", r.undominated.join(", "));
            }
        }
    }
    if let Some(pairs) = &doc.incomparable_pairs {
        for p in pairs {
            let _ = writeln!(s, "{} ? {} ({})", p.first, p.second, issue_text(p.issue));
        }
    }
    s
}

/// Renders a document; both formats are deterministic for a given document.
pub fn emit(doc: &OutputDocument, format: Format) -> String {
    match format {
        Format::Text => text(doc),
        Format::Json => {
            let mut out = serde_json::to_string_pretty(doc).expect("documents serialize");
            out.push('\n');
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::ProbInterval;
    use crate::syntax::Literal;

    fn doc() -> OutputDocument {
        let h = PInterpretation::new().with(Literal::ground("a", &[]), ProbInterval::from_decimals("0.7", "0.7"));
        OutputDocument { answer_sets: answer_set_docs(&[h]), ..Default::default() }
    }

    #[test]
    fn exact_decimal_strings() {
        let d = doc();
        assert_eq!(d.answer_sets[0].entries[0].interval, ["0.7".to_string(), "0.7".to_string()]);
    }

    #[test]
    fn solve_mode_omits_ranking() {
        let json = emit(&doc(), Format::Json);
        assert!(!json.contains("ranking"));
        let back: OutputDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc());
    }

    #[test]
    fn irrelevant_index_is_a_string() {
        let e = satisfaction_docs(&[vec![SatisfactionIndex::Irrelevant, SatisfactionIndex::Index(2)]]);
        let json = serde_json::to_string(&e).unwrap();
        assert!(json.contains(r#""index":"irr""#) && json.contains(r#""index":2"#));
    }
}

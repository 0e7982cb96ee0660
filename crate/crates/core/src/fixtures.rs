//! Expected values for table reproduction, each tagged with its table and row.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

const RAW: &str = include_str!("../data/expected.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeylOrderRow {
    pub source: String,
    pub degree: i64,
    pub order: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SexticRow {
    pub source: String,
    pub pattern: String,
    pub surface: String,
    pub topology: String,
    pub euler: i64,
    pub components: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubicRow {
    pub source: String,
    pub class: String,
    pub lines: usize,
    pub tritangents: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuarticRow {
    pub source: String,
    pub class: String,
    pub minus_ones: usize,
    pub lines: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwistRow {
    pub source: String,
    pub twist: String,
    pub lines: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceRow {
    pub source: String,
    pub class: String,
    pub trace: i64,
    pub lines: usize,
    #[serde(default)]
    pub topology: Option<String>,
    #[serde(default)]
    pub components: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyRow {
    pub source: String,
    pub group: String,
    pub degree: usize,
    pub family: String,
    pub span: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegreeOneSample {
    pub source: String,
    pub row: String,
    pub f4: Vec<i64>,
    pub f6: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Expected {
    pub weyl_orders: Vec<WeylOrderRow>,
    pub sextic_forms: Vec<SexticRow>,
    pub cubic_forms: Vec<CubicRow>,
    pub quartic_forms: Vec<QuarticRow>,
    pub clebsch_twists: Vec<TwistRow>,
    pub degree_two_forms: Vec<TraceRow>,
    pub degree_one_forms: Vec<TraceRow>,
    pub invariant_families: Vec<FamilyRow>,
    pub degree_one_samples: Vec<DegreeOneSample>,
}

pub fn expected() -> &'static Expected {
    static CELL: OnceLock<Expected> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(RAW).expect("embedded fixtures parse"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_and_tags() {
        let e = expected();
        assert_eq!(e.degree_one_forms.len(), 10);
        assert_eq!(e.degree_one_samples.len(), 6);
        let tagged = e.weyl_orders.iter().map(|r| &r.source).chain(e.cubic_forms.iter().map(|r| &r.source));
        for s in tagged {
            assert!(s.starts_with("table:"), "{s}");
        }
        for f in &e.invariant_families {
            assert!(f.span.iter().all(|c| c.len() == f.degree + 1), "{}", f.source);
        }
    }
}

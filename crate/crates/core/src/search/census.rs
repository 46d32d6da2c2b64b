use serde::{Deserialize, Serialize};

use super::{search_collect, SearchOptions, SearchQuery};
use crate::arith::factorize;
use crate::classify::{Predicate, PredicateSpec, ShapePattern};
use crate::error::Result;

/// Exponent shapes whose bi-unitary harmonic members are catalogued from
/// the table of unitary harmonic numbers with at most four prime factors.
pub const CATALOG_SHAPES: [&str; 6] = ["2,1", "2,1,1", "2,2,1", "2,1,1,1", "2,2,1,1", "2,2,2,1"];

/// Two-prime shapes with no (or one) bi-unitary harmonic member: p^3 q^2,
/// p q^4, p^3 q^4, and p q^2.
pub const TWO_PRIME_SHAPES: [&str; 4] = ["3,2", "4,1", "4,3", "2,1"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeMembers {
    pub shape: ShapePattern,
    pub members: Vec<u64>,
}

/// Aggregate facts about the bi-unitary harmonic numbers up to a bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub bound: u64,
    pub count_including_one: u64,
    pub count_excluding_one: u64,
    pub members: Vec<u64>,
    /// Smallest member that is neither harmonic nor unitary harmonic.
    pub first_exceptional: Option<u64>,
    /// How many members (1 included) precede `first_exceptional`.
    pub members_before_exceptional: u64,
    /// Powerful members above 1.
    pub powerful: Vec<u64>,
    /// Perfect-square members above 1.
    pub perfect_squares: Vec<u64>,
    pub shapes: Vec<ShapeMembers>,
}

/// All shapes reported by the census, without duplicates.
pub fn census_shapes() -> Vec<ShapePattern> {
    let mut shapes: Vec<ShapePattern> = CATALOG_SHAPES
        .iter()
        .chain(TWO_PRIME_SHAPES.iter())
        .map(|s| s.parse().expect("valid shape"))
        .collect();
    shapes.sort();
    shapes.dedup();
    shapes
}

pub fn census_report(bound: u64, opts: &SearchOptions) -> Result<CensusReport> {
    let query = SearchQuery::new(1, bound)
        .with_predicate(PredicateSpec::is(Predicate::BiunitaryHarmonic))
        .include_one(true);
    let (records, summary) = search_collect(&query, opts)?;

    let members: Vec<u64> = records.iter().map(|r| r.n).collect();
    let first_exc = records
        .iter()
        .position(|r| !r.flags.harmonic && !r.flags.unitary_harmonic);
    let above_one = || records.iter().filter(|r| r.n > 1);

    let mut shapes: Vec<ShapeMembers> = census_shapes()
        .into_iter()
        .map(|shape| ShapeMembers {
            shape,
            members: Vec::new(),
        })
        .collect();
    for r in &records {
        let f = factorize(r.n)?;
        for s in shapes.iter_mut().filter(|s| s.shape.matches(&f)) {
            s.members.push(r.n);
        }
    }

    Ok(CensusReport {
        bound,
        count_including_one: summary.records,
        count_excluding_one: summary.records_excluding_one,
        first_exceptional: first_exc.map(|i| records[i].n),
        members_before_exceptional: first_exc.unwrap_or(records.len()) as u64,
        powerful: above_one()
            .filter(|r| r.flags.powerful)
            .map(|r| r.n)
            .collect(),
        perfect_squares: above_one()
            .filter(|r| r.flags.perfect_square)
            .map(|r| r.n)
            .collect(),
        members,
        shapes,
    })
}

impl CensusReport {
    pub fn shape_members(&self, shape: &ShapePattern) -> Option<&[u64]> {
        self.shapes
            .iter()
            .find(|s| &s.shape == shape)
            .map(|s| s.members.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::ScanConfig;

    #[test]
    fn census_to_ten_thousand() {
        let opts = SearchOptions {
            scan: ScanConfig::new(2, 4096),
            ..Default::default()
        };
        let r = census_report(10_000, &opts).unwrap();
        assert_eq!(
            r.members,
            vec![1, 6, 45, 60, 90, 270, 420, 630, 672, 2970, 5460, 8190, 9072, 9100]
        );
        assert_eq!(r.count_including_one, 14);
        assert_eq!(r.count_excluding_one, 13);
        assert_eq!(r.first_exceptional, Some(9072));
        assert_eq!(r.members_before_exceptional, 12);
        assert!(r.powerful.is_empty());
        assert_eq!(r.shape_members(&"2,1".parse().unwrap()), Some(&[45u64][..]));
        assert_eq!(
            r.shape_members(&"2,1,1".parse().unwrap()),
            Some(&[60u64, 90][..])
        );
    }
}

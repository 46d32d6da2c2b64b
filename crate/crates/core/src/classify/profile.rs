use serde::{Deserialize, Serialize};

use super::predicate::{self, Predicate};
use super::MeanKind;
use crate::arith::{factorize, DivisorFunctions, Factorization};
use crate::error::Result;
use crate::ratio::ExactRatio;

/// The nine harmonic means, indexed by [`MeanKind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Means([ExactRatio; 9]);

impl Means {
    pub fn compute(n: u64, f: &DivisorFunctions) -> Result<Self> {
        let mut out = [ExactRatio::ONE; 9];
        for kind in MeanKind::ALL {
            out[kind.index()] = f.mean(n as u128, kind)?;
        }
        Ok(Means(out))
    }

    pub fn get(&self, kind: MeanKind) -> ExactRatio {
        self.0[kind.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (MeanKind, ExactRatio)> + '_ {
        MeanKind::ALL.into_iter().map(|k| (k, self.0[k.index()]))
    }
}

impl Serialize for Means {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(9))?;
        for (kind, value) in self.iter() {
            map.serialize_entry(kind.label(), &value)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Means {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use std::collections::HashMap;
        let raw: HashMap<String, ExactRatio> = HashMap::deserialize(d)?;
        let mut out = [ExactRatio::ONE; 9];
        for kind in MeanKind::ALL {
            out[kind.index()] = *raw
                .get(kind.label())
                .ok_or_else(|| serde::de::Error::missing_field(kind.label()))?;
        }
        Ok(Means(out))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub harmonic: bool,
    pub unitary_harmonic: bool,
    pub biunitary_harmonic: bool,
    pub h1: bool,
    pub h2: bool,
    pub h3: bool,
    pub h4: bool,
    pub h5: bool,
    pub h6: bool,
    pub perfect: bool,
    pub k_perfect_level: Option<u128>,
    pub unitary_perfect: bool,
    pub biunitary_k_perfect_level: Option<u128>,
    pub balanced: bool,
    pub friendly: bool,
    pub powerful: bool,
    pub perfect_square: bool,
    pub squarefree: bool,
}

impl Flags {
    /// Derives every flag from the stored function values and exponents.
    pub fn compute(n: u64, factorization: &Factorization, f: &DivisorFunctions) -> Result<Self> {
        let n128 = n as u128;
        let h = |kind| f.mean_is_integer(n128, kind);
        Ok(Flags {
            harmonic: h(MeanKind::H)?,
            unitary_harmonic: h(MeanKind::HStar)?,
            biunitary_harmonic: h(MeanKind::HBistar)?,
            h1: h(MeanKind::H1)?,
            h2: h(MeanKind::H2)?,
            h3: h(MeanKind::H3)?,
            h4: h(MeanKind::H4)?,
            h5: h(MeanKind::H5)?,
            h6: h(MeanKind::H6)?,
            perfect: f.sigma == 2 * n128,
            k_perfect_level: predicate::level(f.sigma, n),
            unitary_perfect: f.sigma_star == 2 * n128,
            biunitary_k_perfect_level: predicate::level(f.sigma_bistar, n),
            balanced: predicate::balanced(n, f),
            friendly: predicate::friendly(n, f),
            powerful: predicate::powerful(factorization),
            perfect_square: predicate::square(factorization),
            squarefree: predicate::squarefree(factorization),
        })
    }

    /// Value of the flag corresponding to `p`; `None` for k-harmonic, which
    /// is not part of the profile.
    pub fn get(&self, p: Predicate) -> Option<bool> {
        Some(match p {
            Predicate::Harmonic => self.harmonic,
            Predicate::UnitaryHarmonic => self.unitary_harmonic,
            Predicate::BiunitaryHarmonic => self.biunitary_harmonic,
            Predicate::HNumber(i) => {
                [self.h1, self.h2, self.h3, self.h4, self.h5, self.h6][i as usize - 1]
            }
            Predicate::Perfect => self.perfect,
            Predicate::MultiPerfect => self.k_perfect_level.is_some(),
            Predicate::UnitaryPerfect => self.unitary_perfect,
            Predicate::BiunitaryPerfect => self.biunitary_k_perfect_level == Some(2),
            Predicate::BiunitaryMultiPerfect => self.biunitary_k_perfect_level.is_some(),
            Predicate::Balanced => self.balanced,
            Predicate::Friendly => self.friendly,
            Predicate::Powerful => self.powerful,
            Predicate::PerfectSquare => self.perfect_square,
            Predicate::Squarefree => self.squarefree,
            Predicate::KHarmonic(_) => return None,
        })
    }

    /// Names of the flags that hold, in declaration order.
    pub fn active(&self) -> Vec<String> {
        const LISTED: [Predicate; 14] = [
            Predicate::Harmonic,
            Predicate::UnitaryHarmonic,
            Predicate::BiunitaryHarmonic,
            Predicate::HNumber(1),
            Predicate::HNumber(2),
            Predicate::HNumber(3),
            Predicate::HNumber(4),
            Predicate::HNumber(5),
            Predicate::HNumber(6),
            Predicate::Perfect,
            Predicate::UnitaryPerfect,
            Predicate::Balanced,
            Predicate::Friendly,
            Predicate::Powerful,
        ];
        let mut out: Vec<String> = LISTED
            .iter()
            .filter(|p| self.get(**p) == Some(true))
            .map(|p| p.name())
            .collect();
        if let Some(k) = self.k_perfect_level {
            out.push(format!("{k}-perfect"));
        }
        if let Some(k) = self.biunitary_k_perfect_level {
            out.push(format!("biunitary-{k}-perfect"));
        }
        if self.perfect_square {
            out.push("square".into());
        }
        if self.squarefree {
            out.push("squarefree".into());
        }
        out
    }
}

/// Everything the library knows about a single integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberProfile {
    pub n: u64,
    pub factorization: Factorization,
    pub functions: DivisorFunctions,
    pub means: Means,
    pub flags: Flags,
}

impl NumberProfile {
    pub fn of(n: u64) -> Result<Self> {
        let factorization = factorize(n)?;
        Self::from_factorization(n, factorization)
    }

    pub fn from_factorization(n: u64, factorization: Factorization) -> Result<Self> {
        debug_assert_eq!(factorization.value(), n);
        let functions = DivisorFunctions::of(&factorization)?;
        let means = Means::compute(n, &functions)?;
        let flags = Flags::compute(n, &factorization, &functions)?;
        Ok(NumberProfile {
            n,
            factorization,
            functions,
            means,
            flags,
        })
    }

    pub fn mean(&self, kind: MeanKind) -> ExactRatio {
        self.means.get(kind)
    }

    pub fn omega(&self) -> usize {
        self.factorization.omega()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_of_9072() {
        let p = NumberProfile::of(9072).unwrap();
        assert_eq!(p.mean(MeanKind::HBistar), ExactRatio::integer(12));
        assert!(p.flags.biunitary_harmonic);
        assert!(!p.flags.harmonic);
        assert!(!p.flags.unitary_harmonic);
        assert_eq!(p.functions.d_bistar, 32);
    }

    #[test]
    fn profile_of_one() {
        let p = NumberProfile::of(1).unwrap();
        for (_, m) in p.means.iter() {
            assert_eq!(m, ExactRatio::ONE);
        }
        assert!(p.flags.harmonic && p.flags.unitary_harmonic && p.flags.biunitary_harmonic);
        assert!(!p.flags.friendly && !p.flags.balanced);
    }

    #[test]
    fn flags_match_means() {
        for n in 1..3000 {
            let p = NumberProfile::of(n).unwrap();
            assert_eq!(p.flags.harmonic, p.mean(MeanKind::H).is_integer());
            assert_eq!(
                p.flags.unitary_harmonic,
                p.mean(MeanKind::HStar).is_integer()
            );
            assert_eq!(
                p.flags.biunitary_harmonic,
                p.mean(MeanKind::HBistar).is_integer()
            );
            for (i, kind) in MeanKind::MIXED.iter().enumerate() {
                assert_eq!(
                    p.flags.get(Predicate::HNumber(i as u8 + 1)),
                    Some(p.mean(*kind).is_integer())
                );
            }
            if let Some(k) = p.flags.biunitary_k_perfect_level {
                assert_eq!(p.functions.sigma_bistar, k * n as u128);
            }
        }
    }

    #[test]
    fn serde_round_trip() {
        let p = NumberProfile::of(9_922_500).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        let back: NumberProfile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}

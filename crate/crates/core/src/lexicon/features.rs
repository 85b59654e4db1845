//! Part-of-speech tags and the closed morphological feature inventory.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Part of speech. Ending rows use the first six; the remaining tags only
/// appear on auxiliary word lists (non-affixed words and the like).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Pos {
    Noun,
    Verb,
    Num,
    Adj,
    Pron,
    Adv,
    Conj,
    Postp,
    Part,
    Intj,
}

impl Pos {
    pub const ALL: [Pos; 10] = [
        Pos::Noun,
        Pos::Verb,
        Pos::Num,
        Pos::Adj,
        Pos::Pron,
        Pos::Adv,
        Pos::Conj,
        Pos::Postp,
        Pos::Part,
        Pos::Intj,
    ];

    /// Tags that may carry inflectional endings.
    pub const INFLECTING: [Pos; 6] = [
        Pos::Noun,
        Pos::Verb,
        Pos::Adj,
        Pos::Num,
        Pos::Pron,
        Pos::Adv,
    ];

    pub fn is_inflecting(self) -> bool {
        Self::INFLECTING.contains(&self)
    }

    /// Tie-break rank: NOUN, VERB, NUM, ADJ, PRON, ADV, then the rest.
    pub fn rank(self) -> u8 {
        self as u8
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Pos::Noun => "NOUN",
            Pos::Verb => "VERB",
            Pos::Num => "NUM",
            Pos::Adj => "ADJ",
            Pos::Pron => "PRON",
            Pos::Adv => "ADV",
            Pos::Conj => "CONJ",
            Pos::Postp => "POSTP",
            Pos::Part => "PART",
            Pos::Intj => "INTJ",
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown part of speech {0:?}")]
pub struct UnknownPos(pub String);

impl FromStr for Pos {
    type Err = UnknownPos;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pos::ALL
            .into_iter()
            .find(|p| p.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownPos(s.to_string()))
    }
}

/// Allowed keys and their values.
pub const FEATURE_INVENTORY: &[(&str, &[&str])] = &[
    ("Case", &["Gen", "Acc", "Dat", "Loc", "Abl"]),
    ("Number", &["Sing", "Plur"]),
    ("Person", &["1Sg", "2Sg", "3Sg", "1Pl", "2Pl", "3Pl"]),
    ("Poss", &["1Sg", "2Sg", "3Sg", "1Pl", "2Pl", "3Pl"]),
    ("Tense", &["Past", "Pres", "Fut"]),
    ("Aspect", &["Prog"]),
    ("Mood", &["Ind", "Imp", "Opt", "Cnd"]),
    ("Voice", &["Pass", "Caus", "Refl", "Recp"]),
    ("Polarity", &["Pos", "Neg"]),
    ("Question", &["Yes"]),
    ("Cop", &["Yes"]),
    ("VerbForm", &["Inf", "Part", "Conv", "Fin"]),
    ("Degree", &["Cmp"]),
    ("NumType", &["Card", "Ord"]),
];

/// A single `Key=Value` feature from the inventory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Feature {
    key: &'static str,
    value: &'static str,
}

impl Feature {
    pub fn key(&self) -> &'static str {
        self.key
    }

    pub fn value(&self) -> &'static str {
        self.value
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.key, self.value)
    }
}

impl Serialize for Feature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown feature tag {0:?}")]
pub struct UnknownFeature(pub String);

impl FromStr for Feature {
    type Err = UnknownFeature;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || UnknownFeature(s.to_string());
        let (key, value) = s.trim().split_once('=').ok_or_else(unknown)?;
        let (key, values) = FEATURE_INVENTORY
            .iter()
            .find(|(k, _)| *k == key)
            .ok_or_else(unknown)?;
        let value = values.iter().find(|v| **v == value).ok_or_else(unknown)?;
        Ok(Feature { key, value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_features() {
        let f: Feature = "Poss=1Sg".parse().unwrap();
        assert_eq!(f.to_string(), "Poss=1Sg");
        assert!("Case=Ins".parse::<Feature>().is_err());
        assert!("Gender=Fem".parse::<Feature>().is_err());
        assert!("Case".parse::<Feature>().is_err());
    }

    #[test]
    fn pos_round_trip() {
        for pos in Pos::ALL {
            assert_eq!(pos.as_str().parse::<Pos>().unwrap(), pos);
        }
        assert!("CONJUNCTION".parse::<Pos>().is_err());
    }

    #[test]
    fn pos_rank_order() {
        let mut v = Pos::INFLECTING.to_vec();
        v.sort_by_key(|p| p.rank());
        assert_eq!(
            v,
            [
                Pos::Noun,
                Pos::Verb,
                Pos::Num,
                Pos::Adj,
                Pos::Pron,
                Pos::Adv
            ]
        );
    }
}

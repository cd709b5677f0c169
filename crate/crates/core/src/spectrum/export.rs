//! Hasse-diagram exports: Graphviz DOT and JSON.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::StratumPoset;
use crate::cartan::{CartanFactor, InvariantTriple};

/// Label of one coordinate of a stratum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateLabel {
    pub factor: CartanFactor,
    pub triple: InvariantTriple,
    pub index: u32,
}

/// JSON shape of a stratum poset: `{ranks, strata, covers, labels}`.
///
/// `covers` holds `[lower, upper]` pairs of stratum tuples; `labels[n]`
/// belongs to `strata[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub ranks: Vec<u32>,
    pub strata: Vec<Vec<u32>>,
    pub covers: Vec<[Vec<u32>; 2]>,
    pub labels: Vec<Vec<CoordinateLabel>>,
}

impl StratumPoset {
    pub fn to_json(&self) -> SpectrumJson {
        let coords = |i: usize| self.stratum(i).coords().to_vec();
        SpectrumJson {
            ranks: self.ranks().to_vec(),
            strata: (0..self.len()).map(coords).collect(),
            covers: self
                .covers()
                .into_iter()
                .map(|(a, b)| [coords(a), coords(b)])
                .collect(),
            labels: (0..self.len())
                .map(|i| {
                    self.factors()
                        .iter()
                        .zip(self.stratum(i).coords())
                        .map(|(f, &index)| CoordinateLabel {
                            factor: *f,
                            triple: f.invariant_triple(),
                            index,
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Hasse diagram in plain Graphviz syntax. Node identifiers are the
    /// tuple strings; node labels read `tuple|weight`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph spectrum {\n  rankdir=BT;\n");
        for s in self.strata() {
            let _ = writeln!(out, "  \"{s}\" [label=\"{s}|{}\"];", s.weight());
        }
        for (a, b) in self.covers() {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", self.stratum(a), self.stratum(b));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::parse_domain;
    use crate::spectrum::{build_spectrum, SpectrumJson};

    #[test]
    fn dot_for_bidisk() {
        let p = build_spectrum(&parse_domain("Ball(1) x Ball(1)").unwrap()).unwrap();
        let expected = "digraph spectrum {
  rankdir=BT;
  \"0,0\" [label=\"0,0|0\"];
  \"0,1\" [label=\"0,1|1\"];
  \"1,0\" [label=\"1,0|1\"];
  \"1,1\" [label=\"1,1|2\"];
  \"0,0\" -> \"0,1\";
  \"0,0\" -> \"1,0\";
  \"0,1\" -> \"1,1\";
  \"1,0\" -> \"1,1\";
}
";
        assert_eq!(p.to_dot(), expected);
    }

    #[test]
    fn json_shape_and_round_trip() {
        let p = build_spectrum(&parse_domain("I(3,2) x V").unwrap()).unwrap();
        let json = p.to_json();
        assert_eq!(json.ranks, vec![2, 2]);
        assert_eq!(json.strata.len(), 9);
        assert_eq!(json.covers.len(), 12);
        let value = serde_json::to_value(&json).unwrap();
        assert_eq!(value["labels"][4][0]["factor"], "I(3,2)");
        assert_eq!(value["labels"][4][1]["triple"]["shilov_dim"], 24);
        assert_eq!(value["covers"][0], serde_json::json!([[0, 0], [0, 1]]));
        let back: SpectrumJson = serde_json::from_value(value).unwrap();
        assert_eq!(back, json);
    }
}

use crate::genome::{Genome, GenomeSchema};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceKind {
    Manhattan,
    Hamming,
}

impl DistanceKind {
    pub fn name(self) -> &'static str {
        match self {
            DistanceKind::Manhattan => "manhattan",
            DistanceKind::Hamming => "hamming",
        }
    }

    /// Manhattan for real genomes, Hamming for integer ones.
    pub fn default_for(schema: &GenomeSchema) -> Self {
        match schema {
            GenomeSchema::Real { .. } => DistanceKind::Manhattan,
            GenomeSchema::Int { .. } => DistanceKind::Hamming,
        }
    }
}

impl std::str::FromStr for DistanceKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "manhattan" => Ok(DistanceKind::Manhattan),
            "hamming" => Ok(DistanceKind::Hamming),
            other => Err(format!(
                "unknown distance `{other}` (expected manhattan or hamming)"
            )),
        }
    }
}

/// Mean per-gene Manhattan distance, each gene scaled by its bound width.
/// Lies in `[0, 1]` for genomes inside `bounds`. Zero-width genes contribute 0.
///
/// Panics unless both genomes are real vectors of length `bounds.len()`.
pub fn manhattan_normalized(a: &Genome, b: &Genome, bounds: &[(f64, f64)]) -> f64 {
    let (Genome::Real(a), Genome::Real(b)) = (a, b) else {
        panic!("manhattan distance needs real genomes; use hamming for integer genomes");
    };
    assert!(
        a.len() == bounds.len() && b.len() == bounds.len(),
        "genome length does not match bounds"
    );
    if bounds.is_empty() {
        return 0.0;
    }
    let sum: f64 = a
        .iter()
        .zip(b)
        .zip(bounds)
        .map(|((x, y), (lo, hi))| {
            let width = hi - lo;
            if width > 0.0 {
                (x - y).abs() / width
            } else {
                0.0
            }
        })
        .sum();
    sum / bounds.len() as f64
}

/// Fraction of positions at which `a` and `b` differ.
///
/// Panics on a length mismatch.
pub fn hamming_normalized<T: PartialEq>(a: &[T], b: &[T]) -> f64 {
    assert_eq!(a.len(), b.len(), "hamming distance needs equal lengths");
    if a.is_empty() {
        return 0.0;
    }
    let diff = a.iter().zip(b).filter(|(x, y)| x != y).count();
    diff as f64 / a.len() as f64
}

/// A normalized genome distance bound to a problem's schema.
#[derive(Clone, Debug)]
pub struct GenomeDistance {
    kind: DistanceKind,
    bounds: Vec<(f64, f64)>,
}

impl GenomeDistance {
    pub fn new(kind: DistanceKind, schema: &GenomeSchema) -> Result<Self> {
        match (kind, schema) {
            (DistanceKind::Manhattan, GenomeSchema::Real { bounds }) => Ok(GenomeDistance {
                kind,
                bounds: bounds.clone(),
            }),
            (DistanceKind::Manhattan, GenomeSchema::Int { .. }) => Err(Error::config(
                "distance",
                "manhattan distance is undefined on integer genomes",
            )),
            (DistanceKind::Hamming, _) => Ok(GenomeDistance {
                kind,
                bounds: Vec::new(),
            }),
        }
    }

    pub fn kind(&self) -> DistanceKind {
        self.kind
    }

    pub fn eval(&self, a: &Genome, b: &Genome) -> f64 {
        match self.kind {
            DistanceKind::Manhattan => manhattan_normalized(a, b, &self.bounds),
            DistanceKind::Hamming => match (a, b) {
                (Genome::Real(x), Genome::Real(y)) => hamming_normalized(x, y),
                (Genome::Int(x), Genome::Int(y)) => hamming_normalized(x, y),
                _ => panic!("genome variants differ"),
            },
        }
    }
}

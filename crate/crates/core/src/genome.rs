//! Genome representations and their schemas.

use rand::Rng;

/// Shape and per-gene domain of a problem's genomes.
#[derive(Clone, Debug, PartialEq)]
pub enum GenomeSchema {
    /// Real genes, each within a closed interval `[lo, hi]`.
    Real { bounds: Vec<(f64, f64)> },
    /// Integer genes, gene `i` drawn from the alphabet `1..=alphabet[i]`.
    Int { alphabet: Vec<u32> },
}

impl GenomeSchema {
    pub fn real_uniform(dimension: usize, lo: f64, hi: f64) -> Self {
        GenomeSchema::Real {
            bounds: vec![(lo, hi); dimension],
        }
    }

    pub fn int_uniform(dimension: usize, symbols: u32) -> Self {
        GenomeSchema::Int {
            alphabet: vec![symbols; dimension],
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            GenomeSchema::Real { bounds } => bounds.len(),
            GenomeSchema::Int { alphabet } => alphabet.len(),
        }
    }

    /// Samples a genome with every gene uniform in its domain.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Genome {
        match self {
            GenomeSchema::Real { bounds } => Genome::Real(
                bounds
                    .iter()
                    .map(|&(lo, hi)| sample_real(lo, hi, rng))
                    .collect(),
            ),
            GenomeSchema::Int { alphabet } => {
                Genome::Int(alphabet.iter().map(|&k| rng.gen_range(1..=k)).collect())
            }
        }
    }

    /// Re-samples gene `index` of `genome` uniformly within its domain.
    pub fn resample_gene<R: Rng + ?Sized>(&self, genome: &mut Genome, index: usize, rng: &mut R) {
        match (self, genome) {
            (GenomeSchema::Real { bounds }, Genome::Real(values)) => {
                let (lo, hi) = bounds[index];
                values[index] = sample_real(lo, hi, rng);
            }
            (GenomeSchema::Int { alphabet }, Genome::Int(values)) => {
                values[index] = rng.gen_range(1..=alphabet[index]);
            }
            _ => panic!("genome does not match schema variant"),
        }
    }

    /// True when `genome` has the right variant, length, and every gene in range.
    pub fn contains(&self, genome: &Genome) -> bool {
        match (self, genome) {
            (GenomeSchema::Real { bounds }, Genome::Real(values)) => {
                bounds.len() == values.len()
                    && bounds
                        .iter()
                        .zip(values)
                        .all(|(&(lo, hi), &v)| lo <= v && v <= hi)
            }
            (GenomeSchema::Int { alphabet }, Genome::Int(values)) => {
                alphabet.len() == values.len()
                    && alphabet.iter().zip(values).all(|(&k, &v)| 1 <= v && v <= k)
            }
            _ => false,
        }
    }
}

fn sample_real<R: Rng + ?Sized>(lo: f64, hi: f64, rng: &mut R) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.gen_range(lo..=hi)
    }
}

/// A solution candidate.
#[derive(Clone, Debug, PartialEq)]
pub enum Genome {
    Real(Vec<f64>),
    Int(Vec<u32>),
}

impl Genome {
    pub fn len(&self) -> usize {
        match self {
            Genome::Real(v) => v.len(),
            Genome::Int(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_real(&self) -> Option<&[f64]> {
        match self {
            Genome::Real(v) => Some(v),
            Genome::Int(_) => None,
        }
    }

    pub fn as_int(&self) -> Option<&[u32]> {
        match self {
            Genome::Int(v) => Some(v),
            Genome::Real(_) => None,
        }
    }

    /// Copies gene `index` of `other` into `self`.
    pub(crate) fn copy_gene_from(&mut self, other: &Genome, index: usize) {
        match (self, other) {
            (Genome::Real(a), Genome::Real(b)) => a[index] = b[index],
            (Genome::Int(a), Genome::Int(b)) => a[index] = b[index],
            _ => panic!("genome variants differ"),
        }
    }

    pub(crate) fn same_shape(&self, other: &Genome) -> bool {
        matches!(
            (self, other),
            (Genome::Real(_), Genome::Real(_)) | (Genome::Int(_), Genome::Int(_))
        ) && self.len() == other.len()
    }
}

/// Selection-neutral bitstring carried alongside the genome. Variation
/// operators act on it exactly as they act on the genome.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tag(Vec<bool>);

impl Tag {
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        Tag((0..len).map(|_| rng.gen_bool(0.5)).collect())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Tag(bits)
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Tag)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn flip(&mut self, index: usize) {
        self.0[index] = !self.0[index];
    }
}

impl std::fmt::Display for Tag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

use crate::genome::{Genome, Tag};

/// Run-unique identity of an individual.
pub type IndividualId = u64;

/// How an individual came into existence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lineage {
    Initial,
    Mutation {
        parent: IndividualId,
    },
    Recombination {
        parents: (IndividualId, IndividualId),
    },
    Hypermutation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Individual {
    pub id: IndividualId,
    pub genome: Genome,
    /// Cached objective value of `genome`.
    pub objective: f64,
    /// Selection score. Depends on the surrounding population and is
    /// recomputed every generation.
    pub fitness: f64,
    /// Genealogy tag, present only while tag-based genealogical diversity is active.
    pub tag: Option<Tag>,
    pub lineage: Lineage,
    /// Parent fitness snapshot taken at breeding time (inherited fitness only).
    pub inherited_h: Option<f64>,
}

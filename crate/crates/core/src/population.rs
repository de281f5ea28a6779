use crate::individual::Individual;

/// A generation-stamped multiset of individuals, optionally split into islands.
#[derive(Clone, Debug, PartialEq)]
pub struct Population {
    pub members: Vec<Individual>,
    pub generation: u64,
    /// Island label of each member, parallel to `members`.
    islands: Option<Vec<usize>>,
    island_count: usize,
}

impl Population {
    pub fn new(members: Vec<Individual>) -> Self {
        Population {
            members,
            generation: 0,
            islands: None,
            island_count: 1,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_partitioned(&self) -> bool {
        self.islands.is_some()
    }

    pub fn island_count(&self) -> usize {
        self.island_count
    }

    pub fn island_labels(&self) -> Option<&[usize]> {
        self.islands.as_deref()
    }

    /// Splits members into `m` contiguous islands whose sizes differ by at
    /// most one, larger islands first (100 over 3 gives 34/33/33).
    pub fn partition(&mut self, m: usize) {
        assert!(m >= 1, "island count must be positive");
        let labels = balanced_sizes(self.members.len(), m)
            .into_iter()
            .enumerate()
            .flat_map(|(island, size)| std::iter::repeat_n(island, size))
            .collect();
        self.islands = Some(labels);
        self.island_count = m;
    }

    /// Replaces the island labels. Panics if the label vector does not match
    /// the member count or names an island `>= m`.
    pub fn set_islands(&mut self, labels: Vec<usize>, m: usize) {
        assert_eq!(labels.len(), self.members.len(), "one label per member");
        assert!(labels.iter().all(|&l| l < m), "island label out of range");
        self.islands = Some(labels);
        self.island_count = m;
    }

    /// Member indices grouped by island. Unpartitioned populations form a
    /// single group.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        match &self.islands {
            None => vec![(0..self.members.len()).collect()],
            Some(labels) => {
                let mut groups = vec![Vec::new(); self.island_count];
                for (i, &l) in labels.iter().enumerate() {
                    groups[l].push(i);
                }
                groups
            }
        }
    }

    pub fn island_sizes(&self) -> Vec<usize> {
        self.groups().iter().map(Vec::len).collect()
    }
}

/// Sizes of `m` groups holding `n` items, differing by at most one.
pub fn balanced_sizes(n: usize, m: usize) -> Vec<usize> {
    let (q, rem) = (n / m, n % m);
    (0..m).map(|i| q + usize::from(i < rem)).collect()
}

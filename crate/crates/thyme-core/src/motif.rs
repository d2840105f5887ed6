//! Motif classification for ordered triples of hyperedges.
//!
//! Three node sets split into seven Venn regions: (1) first only, (2) second
//! only, (3) third only, (4) first∩second only, (5) second∩third only,
//! (6) third∩first only, (7) all three. The emptiness of the regions is
//! packed into a 7-bit [`RegionPattern`]; bit r−1 is set iff region r holds
//! at least one node. Of the 128 codes, 96 describe connected triples and
//! form the temporal motif catalog: 86 with three distinct sets, 9 with a
//! duplicated pair, and 1 with all three sets identical. The 86 distinct-set
//! patterns collapse into 26 order-free classes used for static motifs.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::hypergraph::NodeId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("node sets must be non-empty")]
    EmptySet,
    #[error("static hyperedges must be pairwise distinct")]
    DuplicateSet,
}

/// Region bits of each hyperedge's private/shared membership.
/// Region r occupies bit r−1.
const EI_EMPTY_MASK: u8 = 0b0110011; // regions 1,2,5,6: empty ⇔ first = second
const JK_EMPTY_MASK: u8 = 0b0101110; // regions 2,3,4,6: empty ⇔ second = third
const IK_EMPTY_MASK: u8 = 0b0011101; // regions 1,3,4,5: empty ⇔ first = third

/// 7-bit emptiness code of an ordered hyperedge triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegionPattern(u8);

impl RegionPattern {
    pub fn from_code(code: u8) -> Self {
        assert!(code < 128, "region pattern code must be < 128");
        Self(code)
    }

    /// Classifies three node sets (sorted, duplicate-free slices). Errors on
    /// an empty set; region sizes come from inclusion–exclusion over the
    /// three cardinalities, the pairwise intersections, and the triple
    /// intersection, so no region set is materialized.
    pub fn from_sets(a: &[NodeId], b: &[NodeId], c: &[NodeId]) -> Result<Self, PatternError> {
        if a.is_empty() || b.is_empty() || c.is_empty() {
            return Err(PatternError::EmptySet);
        }
        Ok(Self::from_sets_unchecked(a, b, c))
    }

    pub(crate) fn from_sets_unchecked(a: &[NodeId], b: &[NodeId], c: &[NodeId]) -> Self {
        let ab = intersection_size(a, b) as i64;
        let bc = intersection_size(b, c) as i64;
        let ca = intersection_size(c, a) as i64;
        let abc = triple_intersection_size(a, b, c) as i64;
        let r = [
            a.len() as i64 - ab - ca + abc,
            b.len() as i64 - ab - bc + abc,
            c.len() as i64 - bc - ca + abc,
            ab - abc,
            bc - abc,
            ca - abc,
            abc,
        ];
        let mut code = 0u8;
        for (i, &size) in r.iter().enumerate() {
            debug_assert!(size >= 0);
            if size > 0 {
                code |= 1 << i;
            }
        }
        Self(code)
    }

    pub fn code(&self) -> u8 {
        self.0
    }

    /// Whether region `r` (1-based) is non-empty.
    pub fn region(&self, r: u8) -> bool {
        debug_assert!((1..=7).contains(&r));
        self.0 & (1 << (r - 1)) != 0
    }

    /// The pattern forces first = second.
    pub fn first_equals_second(&self) -> bool {
        self.0 & EI_EMPTY_MASK == 0
    }

    /// The pattern forces second = third.
    pub fn second_equals_third(&self) -> bool {
        self.0 & JK_EMPTY_MASK == 0
    }

    /// The pattern forces first = third.
    pub fn first_equals_third(&self) -> bool {
        self.0 & IK_EMPTY_MASK == 0
    }

    /// Connectivity of the pairwise-overlap graph on the three hyperedges:
    /// edges exist where region 4, 5, or 6 (or 7) witnesses an intersection,
    /// and a 3-node graph is connected iff at least two edges are present.
    pub fn is_connected(&self) -> bool {
        let triple = self.region(7);
        let edges = [triple || self.region(4), triple || self.region(5), triple || self.region(6)];
        edges.iter().filter(|&&e| e).count() >= 2
    }

    /// Region bits as a 7-character string in region order 1..7.
    pub fn bit_string(&self) -> String {
        (1..=7).map(|r| if self.region(r) { '1' } else { '0' }).collect()
    }

    /// Applies a permutation of the three argument positions. `perm[p]` is
    /// the new position of the hyperedge currently at position `p`.
    pub fn permute(&self, perm: [usize; 3]) -> Self {
        // Label sets over positions {0,1,2} in region order 1..7.
        const LABELS: [u8; 7] = [0b001, 0b010, 0b100, 0b011, 0b110, 0b101, 0b111];
        let region_of = |label: u8| LABELS.iter().position(|&l| l == label).unwrap();
        let mut code = 0u8;
        for (r, &label) in LABELS.iter().enumerate() {
            if self.0 & (1 << r) != 0 {
                let mut mapped = 0u8;
                for p in 0..3 {
                    if label & (1 << p) != 0 {
                        mapped |= 1 << perm[p];
                    }
                }
                code |= 1 << region_of(mapped);
            }
        }
        Self(code)
    }

    /// Minimum code over the six argument permutations.
    pub fn canonical(&self) -> Self {
        PERMUTATIONS
            .iter()
            .map(|&p| self.permute(p))
            .min()
            .unwrap()
    }
}

pub(crate) const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn intersection_size(a: &[NodeId], b: &[NodeId]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

fn triple_intersection_size(a: &[NodeId], b: &[NodeId], c: &[NodeId]) -> usize {
    let (mut i, mut j, mut k, mut n) = (0, 0, 0, 0);
    while i < a.len() && j < b.len() && k < c.len() {
        let m = a[i].min(b[j]).min(c[k]);
        if a[i] == m && b[j] == m && c[k] == m {
            n += 1;
        }
        if a[i] == m {
            i += 1;
        }
        if b[j] == m {
            j += 1;
        }
        if c[k] == m {
            k += 1;
        }
    }
    n
}

/// Temporal motif identifier, 1..=96.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MotifId(u8);

impl MotifId {
    pub fn new(id: u8) -> Self {
        assert!((1..=96).contains(&id));
        Self(id)
    }

    pub fn get(&self) -> u8 {
        self.0
    }

    /// Zero-based index into a 96-slot count vector.
    pub fn index(&self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for MotifId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Static motif class, 1..=26.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StaticMotifId(u8);

impl StaticMotifId {
    pub fn new(id: u8) -> Self {
        assert!((1..=26).contains(&id));
        Self(id)
    }

    pub fn get(&self) -> u8 {
        self.0
    }

    pub fn index(&self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for StaticMotifId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Position of the duplicated pair within a pair-inducing triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairOrder {
    /// First two hyperedges share a node set (O1).
    FirstTwo,
    /// Last two hyperedges share a node set (O2).
    LastTwo,
    /// First and last hyperedges share a node set (O3).
    FirstLast,
}

impl PairOrder {
    pub fn label(&self) -> &'static str {
        match self {
            PairOrder::FirstTwo => "O1",
            PairOrder::LastTwo => "O2",
            PairOrder::FirstLast => "O3",
        }
    }
}

/// Containment relation between the duplicated set and the remaining one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairStructure {
    OtherContainsDup,
    DupContainsOther,
    ProperOverlap,
}

impl PairStructure {
    pub fn label(&self) -> &'static str {
        match self {
            PairStructure::OtherContainsDup => "other-contains-dup",
            PairStructure::DupContainsOther => "dup-contains-other",
            PairStructure::ProperOverlap => "proper-overlap",
        }
    }
}

/// How many distinct node sets underlie an instance of the motif.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DuplicationClass {
    Triple,
    Pair { order: PairOrder, structure: PairStructure },
    Single,
}

impl DuplicationClass {
    pub fn label(&self) -> &'static str {
        match self {
            DuplicationClass::Triple => "triple",
            DuplicationClass::Pair { order: PairOrder::FirstTwo, .. } => "pair-O1",
            DuplicationClass::Pair { order: PairOrder::LastTwo, .. } => "pair-O2",
            DuplicationClass::Pair { order: PairOrder::FirstLast, .. } => "pair-O3",
            DuplicationClass::Single => "single",
        }
    }

    pub fn structure_label(&self) -> &'static str {
        match self {
            DuplicationClass::Pair { structure, .. } => structure.label(),
            _ => "n/a",
        }
    }
}

/// One catalog row.
#[derive(Debug, Clone, Copy)]
pub struct MotifEntry {
    pub id: MotifId,
    pub pattern: RegionPattern,
    pub class: DuplicationClass,
    /// Static class of the pattern's orbit; present for distinct-set motifs.
    pub static_class: Option<StaticMotifId>,
}

/// The generated catalog of the 96 connected patterns.
///
/// Numbering is canonical rather than pictorial: distinct-set patterns take
/// ids 1..=86 in ascending code order; the nine pair patterns take 87..=95
/// grouped by containment structure (structures ordered by the code of their
/// O1 representative) with O1, O2, O3 inside each group; the all-duplicated
/// pattern is 96. Export the table when comparing against other tools.
pub struct MotifTable {
    entries: Vec<MotifEntry>,
    pattern_to_id: [Option<MotifId>; 128],
    static_class_of_code: [Option<StaticMotifId>; 128],
}

impl MotifTable {
    pub fn new() -> Self {
        let mut triple_codes = Vec::new();
        let mut pairs: Vec<(u8, PairOrder, PairStructure)> = Vec::new();
        let mut single_code = None;
        for code in 0u8..128 {
            let p = RegionPattern(code);
            if !p.is_connected() {
                continue;
            }
            let ij = p.first_equals_second();
            let jk = p.second_equals_third();
            let ik = p.first_equals_third();
            match (ij, jk, ik) {
                (false, false, false) => triple_codes.push(code),
                (true, true, true) => {
                    debug_assert!(single_code.is_none());
                    single_code = Some(code);
                }
                _ => {
                    // Exactly one equality: two coinciding equalities force the third.
                    debug_assert_eq!([ij, jk, ik].iter().filter(|&&d| d).count(), 1);
                    let (order, dup_private, other_private) = if ij {
                        (PairOrder::FirstTwo, 4, 3)
                    } else if jk {
                        (PairOrder::LastTwo, 5, 1)
                    } else {
                        (PairOrder::FirstLast, 6, 2)
                    };
                    let structure = match (p.region(dup_private), p.region(other_private)) {
                        (true, false) => PairStructure::DupContainsOther,
                        (false, true) => PairStructure::OtherContainsDup,
                        (true, true) => PairStructure::ProperOverlap,
                        (false, false) => unreachable!("both private regions empty implies all-duplicated"),
                    };
                    pairs.push((code, order, structure));
                }
            }
        }

        // Static orbits of the distinct-set patterns under argument permutation.
        let mut orbit_reps: Vec<u8> = triple_codes
            .iter()
            .map(|&c| RegionPattern(c).canonical().code())
            .collect();
        orbit_reps.sort_unstable();
        orbit_reps.dedup();
        let mut static_class_of_code = [None; 128];
        for &code in &triple_codes {
            let rep = RegionPattern(code).canonical().code();
            let class = orbit_reps.binary_search(&rep).unwrap() as u8 + 1;
            static_class_of_code[code as usize] = Some(StaticMotifId::new(class));
        }

        let mut entries = Vec::with_capacity(96);
        for &code in &triple_codes {
            entries.push(MotifEntry {
                id: MotifId::new(entries.len() as u8 + 1),
                pattern: RegionPattern(code),
                class: DuplicationClass::Triple,
                static_class: static_class_of_code[code as usize],
            });
        }

        // Structure-major layout for the pair block: structures ascend by the
        // code of their O1 pattern, O1 < O2 < O3 inside each structure.
        let o1_code = |s: PairStructure| {
            pairs
                .iter()
                .find(|(_, o, st)| *o == PairOrder::FirstTwo && *st == s)
                .map(|&(c, _, _)| c)
                .unwrap()
        };
        let mut structures = [
            PairStructure::OtherContainsDup,
            PairStructure::DupContainsOther,
            PairStructure::ProperOverlap,
        ];
        structures.sort_by_key(|&s| o1_code(s));
        for &structure in &structures {
            for order in [PairOrder::FirstTwo, PairOrder::LastTwo, PairOrder::FirstLast] {
                let &(code, _, _) = pairs
                    .iter()
                    .find(|(_, o, s)| *o == order && *s == structure)
                    .expect("every structure admits all three orders");
                entries.push(MotifEntry {
                    id: MotifId::new(entries.len() as u8 + 1),
                    pattern: RegionPattern(code),
                    class: DuplicationClass::Pair { order, structure },
                    static_class: None,
                });
            }
        }

        let single = single_code.expect("the all-duplicated pattern is connected");
        entries.push(MotifEntry {
            id: MotifId::new(entries.len() as u8 + 1),
            pattern: RegionPattern(single),
            class: DuplicationClass::Single,
            static_class: None,
        });

        let mut pattern_to_id = [None; 128];
        for entry in &entries {
            pattern_to_id[entry.pattern.code() as usize] = Some(entry.id);
        }

        Self { entries, pattern_to_id, static_class_of_code }
    }

    /// Shared table instance; construction is cheap but hot paths look ids up
    /// per classified triple.
    pub fn global() -> &'static MotifTable {
        static TABLE: OnceLock<MotifTable> = OnceLock::new();
        TABLE.get_or_init(MotifTable::new)
    }

    pub fn entries(&self) -> &[MotifEntry] {
        &self.entries
    }

    pub fn entry(&self, id: MotifId) -> &MotifEntry {
        &self.entries[id.index()]
    }

    /// Motif id of a connected pattern code.
    pub fn id_of_pattern(&self, pattern: RegionPattern) -> Option<MotifId> {
        self.pattern_to_id[pattern.code() as usize]
    }

    /// Temporal motif of three node sets given in arrival order, or `None`
    /// when the overlap graph is disconnected.
    pub fn temporal_motif(
        &self,
        first: &[NodeId],
        second: &[NodeId],
        third: &[NodeId],
    ) -> Result<Option<MotifId>, PatternError> {
        let pattern = RegionPattern::from_sets(first, second, third)?;
        Ok(self.pattern_to_id[pattern.code() as usize])
    }

    pub(crate) fn temporal_motif_unchecked(
        &self,
        first: &[NodeId],
        second: &[NodeId],
        third: &[NodeId],
    ) -> Option<MotifId> {
        let pattern = RegionPattern::from_sets_unchecked(first, second, third);
        self.pattern_to_id[pattern.code() as usize]
    }

    /// Order-free static motif class of three pairwise-distinct node sets,
    /// or `None` when disconnected. Errors when two sets coincide.
    pub fn static_motif(
        &self,
        a: &[NodeId],
        b: &[NodeId],
        c: &[NodeId],
    ) -> Result<Option<StaticMotifId>, PatternError> {
        let pattern = RegionPattern::from_sets(a, b, c)?;
        if pattern.first_equals_second()
            || pattern.second_equals_third()
            || pattern.first_equals_third()
        {
            return Err(PatternError::DuplicateSet);
        }
        Ok(self.static_class_of_code[pattern.code() as usize])
    }

    pub(crate) fn static_motif_unchecked(
        &self,
        a: &[NodeId],
        b: &[NodeId],
        c: &[NodeId],
    ) -> Option<StaticMotifId> {
        let pattern = RegionPattern::from_sets_unchecked(a, b, c);
        self.static_class_of_code[pattern.code() as usize]
    }
}

impl Default for MotifTable {
    fn default() -> Self {
        Self::new()
    }
}

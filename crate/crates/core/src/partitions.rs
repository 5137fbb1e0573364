//! Brute-force enumeration of partitions with parts separated by parity: all
//! parts of one parity are strictly smaller than all parts of the other. The
//! eight families fix which parity is larger and whether each side repeats.
//!
//! This is the independent combinatorial oracle for the catalog's sum-side
//! series: the enumerator never touches series arithmetic, so agreement
//! between the two is meaningful evidence.

use std::fmt;

use crate::series::{QSeries, Rational};

/// Cap for [`enumerate`]; counting is unbounded.
pub const ENUMERATION_BOUND: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    fn opposite(self) -> Parity {
        match self {
            Parity::Odd => Parity::Even,
            Parity::Even => Parity::Odd,
        }
    }

    fn matches(self, part: usize) -> bool {
        match self {
            Parity::Odd => !part.is_multiple_of(2),
            Parity::Even => part.is_multiple_of(2),
        }
    }
}

/// One of the eight partition families.
///
/// Naming follows the two-letter convention: `ed` evens distinct, `eu` evens
/// unlimited, `od` odds distinct, `ou` odds unlimited; the first pair is the
/// condition on the larger parts, the second on the smaller. The smaller
/// subpartition must be nonempty except in the two families with unlimited
/// smaller evens; the larger subpartition may always be empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParityClass {
    pub larger_parity: Parity,
    pub larger_distinct: bool,
    pub smaller_distinct: bool,
    pub smaller_may_be_empty: bool,
}

impl ParityClass {
    /// Larger parts odd unlimited, smaller parts even unlimited.
    pub const OU_EU: ParityClass = ParityClass {
        larger_parity: Parity::Odd,
        larger_distinct: false,
        smaller_distinct: false,
        smaller_may_be_empty: true,
    };
    /// Larger parts odd distinct, smaller parts even unlimited.
    pub const OD_EU: ParityClass = ParityClass {
        larger_parity: Parity::Odd,
        larger_distinct: true,
        smaller_distinct: false,
        smaller_may_be_empty: true,
    };
    /// Larger parts odd unlimited, smaller parts even distinct.
    pub const OU_ED: ParityClass = ParityClass {
        larger_parity: Parity::Odd,
        larger_distinct: false,
        smaller_distinct: true,
        smaller_may_be_empty: false,
    };
    /// Larger parts odd distinct, smaller parts even distinct.
    pub const OD_ED: ParityClass = ParityClass {
        larger_parity: Parity::Odd,
        larger_distinct: true,
        smaller_distinct: true,
        smaller_may_be_empty: false,
    };
    /// Larger parts even unlimited, smaller parts odd unlimited.
    pub const EU_OU: ParityClass = ParityClass {
        larger_parity: Parity::Even,
        larger_distinct: false,
        smaller_distinct: false,
        smaller_may_be_empty: false,
    };
    /// Larger parts even distinct, smaller parts odd unlimited.
    pub const ED_OU: ParityClass = ParityClass {
        larger_parity: Parity::Even,
        larger_distinct: true,
        smaller_distinct: false,
        smaller_may_be_empty: false,
    };
    /// Larger parts even unlimited, smaller parts odd distinct.
    pub const EU_OD: ParityClass = ParityClass {
        larger_parity: Parity::Even,
        larger_distinct: false,
        smaller_distinct: true,
        smaller_may_be_empty: false,
    };
    /// Larger parts even distinct, smaller parts odd distinct.
    pub const ED_OD: ParityClass = ParityClass {
        larger_parity: Parity::Even,
        larger_distinct: true,
        smaller_distinct: true,
        smaller_may_be_empty: false,
    };

    /// All eight families, in stable tag order.
    pub const ALL: [ParityClass; 8] = [
        ParityClass::OU_EU,
        ParityClass::OD_EU,
        ParityClass::OU_ED,
        ParityClass::OD_ED,
        ParityClass::EU_OU,
        ParityClass::ED_OU,
        ParityClass::EU_OD,
        ParityClass::ED_OD,
    ];

    pub fn smaller_parity(&self) -> Parity {
        self.larger_parity.opposite()
    }

    /// The stable family tag, larger condition first (`"ou_eu"`, ...).
    pub fn name(&self) -> &'static str {
        match (self.larger_parity, self.larger_distinct, self.smaller_distinct) {
            (Parity::Odd, false, false) => "ou_eu",
            (Parity::Odd, true, false) => "od_eu",
            (Parity::Odd, false, true) => "ou_ed",
            (Parity::Odd, true, true) => "od_ed",
            (Parity::Even, false, false) => "eu_ou",
            (Parity::Even, true, false) => "ed_ou",
            (Parity::Even, false, true) => "eu_od",
            (Parity::Even, true, true) => "ed_od",
        }
    }

    pub fn from_name(name: &str) -> Option<ParityClass> {
        ParityClass::ALL.iter().copied().find(|c| c.name() == name)
    }
}

/// A partition with parts stored in nonincreasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    fn new(mut parts: Vec<usize>) -> Partition {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    BoundExceeded { n: usize, bound: usize },
}

impl fmt::Display for EnumerationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerationError::BoundExceeded { n, bound } => {
                write!(f, "enumeration of n = {n} exceeds the configured bound {bound}")
            }
        }
    }
}

impl std::error::Error for EnumerationError {}

/// Walk all partitions of `target` into parts of one parity, largest part
/// first, every part in `min_part..=cap`, repeated or distinct. The empty
/// partition is produced when `target == 0`.
fn walk_parity(
    target: usize,
    parity: Parity,
    min_part: usize,
    cap: usize,
    distinct: bool,
    stack: &mut Vec<usize>,
    sink: &mut impl FnMut(&[usize]),
) {
    if target == 0 {
        sink(stack);
        return;
    }
    let mut p = target.min(cap);
    if !parity.matches(p) {
        if p == 0 {
            return;
        }
        p -= 1;
    }
    while p >= 1 && p >= min_part {
        stack.push(p);
        let next_cap = if distinct { p.saturating_sub(2) } else { p };
        walk_parity(target - p, parity, min_part, next_cap, distinct, stack, sink);
        stack.pop();
        if p < 2 {
            break;
        }
        p -= 2;
    }
}

/// Feed every partition of `n` in the class to `sink` as a pair
/// (smaller-parity parts, larger-parity parts).
fn walk_class(class: ParityClass, n: usize, sink: &mut impl FnMut(&[usize], &[usize])) {
    // Empty smaller subpartition: larger parts unconstrained from below. This
    // also yields the empty partition at n = 0.
    if class.smaller_may_be_empty {
        let mut stack = Vec::new();
        walk_parity(n, class.larger_parity, 1, n, class.larger_distinct, &mut stack, &mut |l| {
            sink(&[], l)
        });
    }

    // Nonempty smaller subpartition of total s; by the descending walk its
    // first entry is the maximum part, and the larger parts then live
    // strictly above it.
    for s in 1..=n {
        let mut small_stack = Vec::new();
        walk_parity(
            s,
            class.smaller_parity(),
            1,
            s,
            class.smaller_distinct,
            &mut small_stack,
            &mut |small| {
                let max_small = small[0];
                let mut large_stack = Vec::new();
                walk_parity(
                    n - s,
                    class.larger_parity,
                    max_small + 1,
                    n - s,
                    class.larger_distinct,
                    &mut large_stack,
                    &mut |large| sink(small, large),
                );
            },
        );
    }
}

/// Number of partitions of `n` in the class. `count(class, 0)` is 1 exactly
/// when the smaller subpartition may be empty.
pub fn count(class: ParityClass, n: usize) -> u64 {
    let mut total = 0u64;
    walk_class(class, n, &mut |_, _| total += 1);
    total
}

/// The oracle generating function `sum_{n <= order} count(class, n) q^n`.
pub fn oracle_series(class: ParityClass, order: usize) -> QSeries {
    let coeffs = (0..=order)
        .map(|n| Rational::from_integer(count(class, n).into()))
        .collect();
    QSeries::from_coeffs(coeffs)
}

/// Materialize the partitions of `n` in the class, up to the configured
/// enumeration bound. Output is sorted, so it is independent of walk order.
pub fn enumerate(class: ParityClass, n: usize) -> Result<Vec<Partition>, EnumerationError> {
    if n > ENUMERATION_BOUND {
        return Err(EnumerationError::BoundExceeded { n, bound: ENUMERATION_BOUND });
    }
    let mut out = Vec::new();
    walk_class(class, n, &mut |small, large| {
        let mut parts = Vec::with_capacity(small.len() + large.len());
        parts.extend_from_slice(small);
        parts.extend_from_slice(large);
        out.push(Partition::new(parts));
    });
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn parts(p: &Partition) -> Vec<usize> {
        p.parts().to_vec()
    }

    #[test]
    fn empty_partition_only_where_smaller_may_be_empty() {
        assert_eq!(count(ParityClass::OU_EU, 0), 1);
        assert_eq!(count(ParityClass::OD_EU, 0), 1);
        for class in [
            ParityClass::OU_ED,
            ParityClass::OD_ED,
            ParityClass::EU_OU,
            ParityClass::ED_OU,
            ParityClass::EU_OD,
            ParityClass::ED_OD,
        ] {
            assert_eq!(count(class, 0), 0, "{}", class.name());
        }
    }

    #[test]
    fn od_ed_small_counts() {
        assert_eq!(count(ParityClass::OD_ED, 2), 1); // {2}
        // {3,2} only; {5} is excluded because the even side must be nonempty.
        assert_eq!(count(ParityClass::OD_ED, 5), 1);
    }

    #[test]
    fn od_ed_enumerations() {
        let two = enumerate(ParityClass::OD_ED, 2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(parts(&two[0]), vec![2]);

        let one = enumerate(ParityClass::OD_ED, 1).unwrap();
        assert!(one.is_empty());

        let five = enumerate(ParityClass::OD_ED, 5).unwrap();
        assert_eq!(five.len(), 1);
        assert_eq!(parts(&five[0]), vec![3, 2]);
    }

    #[test]
    fn ed_od_allows_lone_smaller_part() {
        let one = enumerate(ParityClass::ED_OD, 1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(parts(&one[0]), vec![1]);
    }

    #[test]
    fn od_eu_counts_match_hand_enumeration() {
        // n = 4: {4}, {2,2}, {3,1}.
        assert_eq!(count(ParityClass::OD_EU, 4), 3);
        let four = enumerate(ParityClass::OD_EU, 4).unwrap();
        let got: Vec<Vec<usize>> = four.iter().map(parts).collect();
        assert!(got.contains(&vec![4]));
        assert!(got.contains(&vec![2, 2]));
        assert!(got.contains(&vec![3, 1]));
        assert_eq!(got.len(), 3);
    }

    #[test]
    fn separation_and_distinctness_hold() {
        for class in ParityClass::ALL {
            for n in 0..=18 {
                for partition in enumerate(class, n).unwrap() {
                    let smaller: Vec<usize> = partition
                        .parts()
                        .iter()
                        .copied()
                        .filter(|p| class.smaller_parity().matches(*p))
                        .collect();
                    let larger: Vec<usize> = partition
                        .parts()
                        .iter()
                        .copied()
                        .filter(|p| class.larger_parity.matches(*p))
                        .collect();
                    assert_eq!(partition.total(), n);
                    if !class.smaller_may_be_empty {
                        assert!(!smaller.is_empty(), "{} {:?}", class.name(), partition);
                    }
                    if let (Some(max_s), Some(min_l)) = (smaller.iter().max(), larger.iter().min())
                    {
                        assert!(max_s < min_l, "{} {:?}", class.name(), partition);
                    }
                    if class.smaller_distinct {
                        let mut s = smaller.clone();
                        s.dedup();
                        assert_eq!(s, smaller, "{} {:?}", class.name(), partition);
                    }
                    if class.larger_distinct {
                        let mut l = larger.clone();
                        l.dedup();
                        assert_eq!(l, larger, "{} {:?}", class.name(), partition);
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_length_matches_count() {
        for class in ParityClass::ALL {
            for n in 0..=20 {
                assert_eq!(
                    enumerate(class, n).unwrap().len() as u64,
                    count(class, n),
                    "{} at n = {n}",
                    class.name()
                );
            }
        }
    }

    #[test]
    fn enumerate_respects_bound() {
        let err = enumerate(ParityClass::OU_EU, ENUMERATION_BOUND + 1).unwrap_err();
        assert_eq!(
            err,
            EnumerationError::BoundExceeded { n: ENUMERATION_BOUND + 1, bound: ENUMERATION_BOUND }
        );
    }

    #[test]
    fn oracle_series_small_case() {
        let s = oracle_series(ParityClass::OD_ED, 2);
        assert_eq!(s.coeffs(), &[rat(0), rat(0), rat(1)]);
    }

    #[test]
    fn family_names_round_trip() {
        for class in ParityClass::ALL {
            assert_eq!(ParityClass::from_name(class.name()), Some(class));
        }
        assert_eq!(ParityClass::from_name("xx_yy"), None);
    }

    #[test]
    fn counts_are_pure_across_repeated_calls() {
        for class in ParityClass::ALL {
            let first: Vec<u64> = (0..=15).map(|n| count(class, n)).collect();
            let second: Vec<u64> = (0..=15).map(|n| count(class, n)).collect();
            assert_eq!(first, second);
        }
    }
}

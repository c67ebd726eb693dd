//! Belnap's four-valued logic B4.
//!
//! The four values are `T` (true), `F` (false), `B` (both: contradictory
//! evidence), and `N` (neither: no evidence). Conjunction and disjunction
//! are the meet and join of the truth lattice with bottom `F`, top `T`,
//! and `B`, `N` incomparable in between; negation swaps `T` and `F` and
//! fixes `B` and `N`.
//!
//! [`TruthValue::move_allowed`] is the relation that drives four-valued
//! reachability: a drifting proposition may keep or lose standing along
//! the entailment order, but only through an explicitly allowed pair.

use core::fmt;
use core::str::FromStr;

/// One Belnap truth value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruthValue {
    /// `T`: known true.
    True,
    /// `F`: known false.
    False,
    /// `B`: both true and false (contradiction).
    Both,
    /// `N`: neither true nor false (no information).
    Neither,
}

use TruthValue::{Both, False, Neither, True};

impl TruthValue {
    /// All four values in state-enumeration digit order: `T, F, N, B`.
    pub const ENUM_ORDER: [TruthValue; 4] = [True, False, Neither, Both];

    /// The two classical values in binary enumeration digit order: `T, F`.
    pub const BINARY_ORDER: [TruthValue; 2] = [True, False];

    /// Negation. Swaps `T` and `F`, fixes `B` and `N`.
    pub const fn negate(self) -> TruthValue {
        match self {
            True => False,
            False => True,
            Both => Both,
            Neither => Neither,
        }
    }

    /// Conjunction: the meet of the truth lattice.
    pub const fn conj(self, other: TruthValue) -> TruthValue {
        match (self, other) {
            (False, _) | (_, False) => False,
            (True, v) | (v, True) => v,
            (Both, Both) => Both,
            (Neither, Neither) => Neither,
            // B and N are incomparable; their meet is the bottom F.
            (Both, Neither) | (Neither, Both) => False,
        }
    }

    /// Disjunction: the join of the truth lattice.
    pub const fn disj(self, other: TruthValue) -> TruthValue {
        match (self, other) {
            (True, _) | (_, True) => True,
            (False, v) | (v, False) => v,
            (Both, Both) => Both,
            (Neither, Neither) => Neither,
            (Both, Neither) | (Neither, Both) => True,
        }
    }

    /// Entailment order `self ⪯ other`: the reflexive-transitive closure
    /// of F⪯B, F⪯N, B⪯T, N⪯T. `F` is the bottom, `T` the top, and `B`,
    /// `N` are incomparable.
    pub const fn entails(self, other: TruthValue) -> bool {
        matches!(
            (self, other),
            (False, _) | (_, True) | (Both, Both) | (Neither, Neither)
        )
    }

    /// Whether a proposition held by another decision maker may pass from
    /// `self` to `dst` while someone else moves.
    ///
    /// The relation is the literal seven-pair set
    /// (B,B), (B,F), (N,N), (N,F), (T,T), (T,B), (T,N) — it is *not*
    /// derived from [`entails`](Self::entails), which would also admit
    /// (F,F) and (T,F) and change every reachability table built on it.
    pub const fn move_allowed(self, dst: TruthValue) -> bool {
        matches!(
            (self, dst),
            (Both, Both)
                | (Both, False)
                | (Neither, Neither)
                | (Neither, False)
                | (True, True)
                | (True, Both)
                | (True, Neither)
        )
    }

    /// Canonical single-character symbol: `T`, `F`, `B`, or `N`.
    pub const fn symbol(self) -> char {
        match self {
            True => 'T',
            False => 'F',
            Both => 'B',
            Neither => 'N',
        }
    }

    /// Inverse of [`symbol`](Self::symbol). Case-sensitive.
    pub const fn from_symbol(c: char) -> Option<TruthValue> {
        match c {
            'T' => Some(True),
            'F' => Some(False),
            'B' => Some(Both),
            'N' => Some(Neither),
            _ => None,
        }
    }

    /// Whether the value is classical (`T` or `F`).
    pub const fn is_classical(self) -> bool {
        matches!(self, True | False)
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Error from parsing a truth-value symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParseTruthValueError;

impl fmt::Display for ParseTruthValueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of T, F, B, N")
    }
}

impl core::error::Error for ParseTruthValueError {}

impl FromStr for TruthValue {
    type Err = ParseTruthValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => TruthValue::from_symbol(c).ok_or(ParseTruthValueError),
            _ => Err(ParseTruthValueError),
        }
    }
}

/// One entry of a binary option-form table: selected (`Y`), not selected
/// (`N`), or the wildcard `-` meaning the entry is left open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OptionMark {
    Yes,
    No,
    Wildcard,
}

impl OptionMark {
    /// The total import mapping into B4: Y→T, N→F, -→B.
    pub const fn to_truth(self) -> TruthValue {
        match self {
            OptionMark::Yes => True,
            OptionMark::No => False,
            OptionMark::Wildcard => Both,
        }
    }

    /// Symbol as written in binary option-form tables.
    pub const fn symbol(self) -> char {
        match self {
            OptionMark::Yes => 'Y',
            OptionMark::No => 'N',
            OptionMark::Wildcard => '-',
        }
    }

    /// Inverse of [`symbol`](Self::symbol). Case-sensitive.
    pub const fn from_symbol(c: char) -> Option<OptionMark> {
        match c {
            'Y' => Some(OptionMark::Yes),
            'N' => Some(OptionMark::No),
            '-' => Some(OptionMark::Wildcard),
            _ => None,
        }
    }
}

impl fmt::Display for OptionMark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[cfg(test)]
mod tests {
    use super::TruthValue::{Both, False, Neither, True};
    use super::*;

    const ALL: [TruthValue; 4] = TruthValue::ENUM_ORDER;

    // The published 4-truth table, transcribed once, in header order
    // N, F, T, B. Rows are the left operand.
    const TABLE_ORDER: [TruthValue; 4] = [Neither, False, True, Both];

    const NEG_TABLE: [TruthValue; 4] = [Neither, True, False, Both];

    #[rustfmt::skip]
    const CONJ_TABLE: [[TruthValue; 4]; 4] = [
        // N        F      T        B
        [Neither, False, Neither, False],   // N
        [False,   False, False,   False],   // F
        [Neither, False, True,    Both],    // T
        [False,   False, Both,    Both],    // B
    ];

    #[rustfmt::skip]
    const DISJ_TABLE: [[TruthValue; 4]; 4] = [
        // N        F        T     B
        [Neither, Neither, True, True],     // N
        [Neither, False,   True, Both],     // F
        [True,    True,    True, True],     // T
        [True,    Both,    True, Both],     // B
    ];

    #[test]
    fn negation_matches_table() {
        for (i, &v) in TABLE_ORDER.iter().enumerate() {
            assert_eq!(v.negate(), NEG_TABLE[i], "negate({v})");
        }
    }

    #[test]
    fn conjunction_matches_table() {
        for (i, &a) in TABLE_ORDER.iter().enumerate() {
            for (j, &b) in TABLE_ORDER.iter().enumerate() {
                assert_eq!(a.conj(b), CONJ_TABLE[i][j], "conj({a},{b})");
            }
        }
    }

    #[test]
    fn disjunction_matches_table() {
        for (i, &a) in TABLE_ORDER.iter().enumerate() {
            for (j, &b) in TABLE_ORDER.iter().enumerate() {
                assert_eq!(a.disj(b), DISJ_TABLE[i][j], "disj({a},{b})");
            }
        }
    }

    #[test]
    fn negation_is_involutive() {
        for v in ALL {
            assert_eq!(v.negate().negate(), v);
        }
    }

    #[test]
    fn lattice_laws() {
        for a in ALL {
            assert_eq!(a.conj(a), a, "conj idempotent at {a}");
            assert_eq!(a.disj(a), a, "disj idempotent at {a}");
            for b in ALL {
                assert_eq!(a.conj(b), b.conj(a), "conj commutative");
                assert_eq!(a.disj(b), b.disj(a), "disj commutative");
                assert_eq!(a.conj(a.disj(b)), a, "absorption conj/disj");
                assert_eq!(a.disj(a.conj(b)), a, "absorption disj/conj");
                assert_eq!(
                    a.conj(b).negate(),
                    a.negate().disj(b.negate()),
                    "De Morgan at ({a},{b})"
                );
                for c in ALL {
                    assert_eq!(a.conj(b).conj(c), a.conj(b.conj(c)), "conj associative");
                    assert_eq!(a.disj(b).disj(c), a.disj(b.disj(c)), "disj associative");
                }
            }
        }
    }

    #[test]
    fn entailment_is_a_partial_order_with_bottom_f_and_top_t() {
        for a in ALL {
            assert!(a.entails(a), "reflexive at {a}");
            assert!(False.entails(a), "F is bottom");
            assert!(a.entails(True), "T is top");
            for b in ALL {
                if a.entails(b) && b.entails(a) {
                    assert_eq!(a, b, "antisymmetry at ({a},{b})");
                }
                for c in ALL {
                    if a.entails(b) && b.entails(c) {
                        assert!(a.entails(c), "transitivity at ({a},{b},{c})");
                    }
                }
            }
        }
        assert!(!Both.entails(Neither));
        assert!(!Neither.entails(Both));
    }

    #[test]
    fn entailment_agrees_with_lattice_operations() {
        for a in ALL {
            for b in ALL {
                assert_eq!(a.entails(b), a.conj(b) == a);
                assert_eq!(a.entails(b), a.disj(b) == b);
            }
        }
    }

    #[test]
    fn move_allowed_is_exactly_the_seven_listed_pairs() {
        let listed = [
            (Both, Both),
            (Both, False),
            (Neither, Neither),
            (Neither, False),
            (True, True),
            (True, Both),
            (True, Neither),
        ];
        let mut count = 0;
        for src in ALL {
            for dst in ALL {
                let expected = listed.contains(&(src, dst));
                assert_eq!(src.move_allowed(dst), expected, "move_allowed({src},{dst})");
                if expected {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 7);
    }

    #[test]
    fn move_allowed_implies_reverse_entailment_with_two_exceptions() {
        for src in ALL {
            for dst in ALL {
                if src.move_allowed(dst) {
                    assert!(dst.entails(src), "({src},{dst})");
                }
                let converse_only = dst.entails(src) && !src.move_allowed(dst);
                let expected = (src, dst) == (False, False) || (src, dst) == (True, False);
                assert_eq!(converse_only, expected, "({src},{dst})");
            }
        }
    }

    #[test]
    fn symbols_round_trip() {
        for v in ALL {
            assert_eq!(TruthValue::from_symbol(v.symbol()), Some(v));
        }
        assert_eq!("T".parse(), Ok(True));
        assert_eq!("N".parse(), Ok(Neither));
        assert_eq!("t".parse::<TruthValue>(), Err(ParseTruthValueError));
        assert_eq!("TF".parse::<TruthValue>(), Err(ParseTruthValueError));
    }

    #[test]
    fn binary_import_mapping_is_total() {
        assert_eq!(OptionMark::Yes.to_truth(), True);
        assert_eq!(OptionMark::No.to_truth(), False);
        assert_eq!(OptionMark::Wildcard.to_truth(), Both);
        for c in ['Y', 'N', '-'] {
            assert!(OptionMark::from_symbol(c).is_some());
        }
        assert_eq!(OptionMark::from_symbol('y'), None);
    }
}

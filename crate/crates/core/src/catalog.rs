//! Named quandles with recorded invariants.
//!
//! Seven entries are built from their definitions; the order-8 table and the
//! nine order-12 tables are stored verbatim in the labelled layout together
//! with a checksum of the stored text.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::analysis::{is_simple, surjection_onto};
use crate::construct::{alexander_quandle, conjugacy_class_quandle, product_quandle, AlexanderSpec};
use crate::group::GroupHandle;
use crate::io::{parse_table_with, Layout};
use crate::iso::{are_isomorphic, canonical_form};
use crate::perm::Permutation;
use crate::quandle::QuandleTable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// Built by the named construction.
    Constructed(&'static str),
    /// Stored table text and its FNV-1a checksum.
    Table { text: &'static str, checksum: u64 },
}

/// Recorded invariants. Every entry is connected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub int_order: u64,
    pub faithful: bool,
    pub phi_image_order: usize,
    pub simple: bool,
    /// Catalog names of quotients that must exist.
    pub surjects_to: &'static [&'static str],
    /// Catalog names of two factors whose product is isomorphic to the entry.
    pub product_of: Option<(&'static str, &'static str)>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub table: QuandleTable,
    pub expected: Expected,
    pub source: Source,
}

pub fn fnv1a(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

fn expected(int_order: u64, faithful: bool, phi_image_order: usize, simple: bool, surjects_to: &'static [&'static str]) -> Expected {
    Expected {
        int_order,
        faithful,
        phi_image_order,
        simple,
        surjects_to,
        product_of: None,
    }
}

fn class_of(group: GroupHandle, cycles: &[&[usize]]) -> QuandleTable {
    let g = Permutation::from_cycles(group.degree(), cycles).expect("valid cycles");
    conjugacy_class_quandle(&group, &g).expect("element of the group")
}

fn f4() -> AlexanderSpec {
    AlexanderSpec::new(vec![2, 2], vec![vec![0, 1], vec![1, 1]]).expect("valid module")
}

fn stored(name: &'static str, description: &'static str, text: &'static str, checksum: u64, expected: Expected) -> CatalogEntry {
    let table = parse_table_with(text, Layout::Labelled).unwrap_or_else(|e| panic!("catalog entry {name}: {e}"));
    CatalogEntry {
        name,
        description,
        table,
        expected,
        source: Source::Table { text, checksum },
    }
}

fn build() -> Vec<CatalogEntry> {
    let constructed = |name, description, recipe, table, expected| CatalogEntry {
        name,
        description,
        table,
        expected,
        source: Source::Constructed(recipe),
    };
    let n = 12;
    vec![
        constructed(
            "Q3",
            "Alexander quandle Z/3 with T = -1",
            "alexander --moduli 3 --matrix 2",
            alexander_quandle(&AlexanderSpec::cyclic(3, 2)).unwrap(),
            expected(6, true, 3, true, &[]),
        ),
        constructed(
            "Q4",
            "Alexander quandle of the field with four elements, T = w",
            "alexander --moduli 2,2 --matrix 0,1;1,1",
            alexander_quandle(&f4()).unwrap(),
            expected(12, true, 4, true, &[]),
        ),
        constructed(
            "Q6_2",
            "transpositions of S4",
            "conjugacy class of (1 2) in S4",
            class_of(GroupHandle::symmetric(4), &[&[0, 1]]),
            expected(24, true, 6, false, &["Q3"]),
        ),
        constructed(
            "Q6_4",
            "4-cycles of S4",
            "conjugacy class of (1 2 3 4) in S4",
            class_of(GroupHandle::symmetric(4), &[&[0, 1, 2, 3]]),
            expected(24, true, 6, false, &["Q3"]),
        ),
        stored("Q8", "order 8, a double cover of Q4", Q8, 0x3584_45fa_3f15_ceb4, expected(24, false, 4, false, &["Q4"])),
        constructed(
            "Q10",
            "transpositions of S5",
            "conjugacy class of (1 2) in S5",
            class_of(GroupHandle::symmetric(5), &[&[0, 1]]),
            expected(120, true, 10, true, &[]),
        ),
        constructed(
            "Q12",
            "one class of 5-cycles in A5",
            "conjugacy class of (1 2 3 4 5) in A5",
            class_of(GroupHandle::alternating(5), &[&[0, 1, 2, 3, 4]]),
            expected(60, true, 12, true, &[]),
        ),
        stored("case1", "order 12", CASE1, 0x25bf_16a9_4e4d_4031, expected(216, true, n, false, &["Q4"])),
        stored("case2", "order 12", CASE2, 0x5456_1b47_3164_9f31, expected(96, true, n, false, &["Q6_2"])),
        stored("case3", "order 12", CASE3, 0xa2a7_01dd_4187_9c21, expected(24, false, 6, false, &["Q6_2"])),
        stored("case4", "order 12", CASE4, 0xf917_09f8_5f6a_69fd, expected(96, true, n, false, &["Q6_2"])),
        stored("case5", "order 12", CASE5, 0x07e6_4493_a217_51fd, expected(96, true, n, false, &["Q6_2", "Q6_4"])),
        stored("case6", "order 12", CASE6, 0x0db1_397b_7ef2_d6dd, expected(48, false, 6, false, &["Q6_4"])),
        stored("case7", "order 12", CASE7, 0x49ea_e1a6_5a60_1081, expected(96, true, n, false, &["Q6_2"])),
        stored(
            "case8",
            "order 12, the Alexander quandle Q3 x Q4",
            CASE8,
            0x12d3_6778_fdcd_19e1,
            Expected {
                product_of: Some(("Q3", "Q4")),
                ..expected(72, true, n, false, &["Q3", "Q4"])
            },
        ),
        stored("case9", "order 12", CASE9, 0x798c_905e_501b_83c9, expected(96, true, n, false, &["Q6_4"])),
    ]
}

pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

/// Looks an entry up by name, ignoring ASCII case.
pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    catalog().iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

fn by_canonical_form() -> &'static BTreeMap<QuandleTable, &'static str> {
    static INDEX: OnceLock<BTreeMap<QuandleTable, &'static str>> = OnceLock::new();
    INDEX.get_or_init(|| catalog().iter().map(|e| (canonical_form(&e.table), e.name)).collect())
}

/// The name of the catalog entry isomorphic to `q`, if any.
pub fn identify(q: &QuandleTable) -> Option<&'static str> {
    if !catalog().iter().any(|e| e.table.order() == q.order()) {
        return None;
    }
    by_canonical_form().get(&canonical_form(q)).copied()
}

/// Recomputes the invariants of `e` and lists every disagreement.
pub fn check_entry(e: &CatalogEntry) -> Vec<String> {
    let mut problems = Vec::new();
    let q = &e.table;
    let x = &e.expected;
    if let Source::Table { text, checksum } = e.source {
        if fnv1a(text) != checksum {
            problems.push(format!("stored text checksum {:#018x} ≠ {checksum:#018x}", fnv1a(text)));
        }
    }
    if !q.is_connected() {
        problems.push("not connected".into());
        return problems;
    }
    let int_order = q.inner_group().order();
    if int_order != x.int_order {
        problems.push(format!("|Int| = {int_order}, expected {}", x.int_order));
    }
    if q.is_faithful() != x.faithful {
        problems.push(format!("faithful = {}, expected {}", q.is_faithful(), x.faithful));
    }
    let image = q.phi_image().0.order();
    if image != x.phi_image_order {
        problems.push(format!("φ-image order {image}, expected {}", x.phi_image_order));
    }
    match is_simple(q) {
        Ok(s) if s == x.simple => {}
        Ok(s) => problems.push(format!("simple = {s}, expected {}", x.simple)),
        Err(err) => problems.push(err.to_string()),
    }
    for target in x.surjects_to {
        let t = &entry(target).expect("target is in the catalog").table;
        if surjection_onto(q, t).is_none() {
            problems.push(format!("no quotient isomorphic to {target}"));
        }
    }
    if let Some((a, b)) = x.product_of {
        let p = product_quandle(&entry(a).unwrap().table, &entry(b).unwrap().table).unwrap();
        if are_isomorphic(q, &p).is_none() {
            problems.push(format!("not isomorphic to {a} x {b}"));
        }
    }
    problems
}

const Q8: &str = r"
    1  2  3  4  6  6  7  8
 1  1  5  7  5  7  1  2  2
 2  7  2  6  2  6  7  3  3
 3  4  7  3  7  3  4  1  1
 4  8  4  1  4  1  8  5  5
 5  2  8  5  8  5  2  6  6
 6  6  3  8  3  8  6  4  4
 7  5  6  4  6  4  5  7  7
 8  3  1  2  1  2  3  8  8
";

const CASE1: &str = r"
    1  2  3  4  5  6  7  8  9 10 11 12
 1  1  1  1 12 11 10  5  4  6  9  7  8
 2  2  2  2 11 10 12  6  5  4  8  9  7
 3  3  3  3 10 12 11  4  6  5  7  8  9
 4  8  9  7  4  4  4 10 12 11  3  2  1
 5  7  8  9  5  5  5 11 10 12  2  1  3
 6  9  7  8  6  6  6 12 11 10  1  3  2
 7 11 12 10  3  1  2  7  7  7  4  5  6
 8 12 10 11  1  2  3  8  8  8  5  6  4
 9 10 11 12  2  3  1  9  9  9  6  4  5
10  6  5  4  7  8  9  3  2  1 10 10 10
11  5  4  6  9  7  8  1  3  2 11 11 11
12  4  6  5  8  9  7  2  1  3 12 12 12
";

const CASE2: &str = r"
    1  2  3  4  5  6  7  8  9 10 11 12
 1  1  1  1  1  9 11 10 12  5  7  6  8
 2  2  2  2  2 12 10 11  9  8  6  7  5
 3  3  3  3  3 10 12  9 11  7  5  8  6
 4  4  4  4  4 11  9 12 10  6  8  5  7
 5  9 12 10 11  5  5  5  5  1  3  4  2
 6 11 10 12  9  6  6  6  6  4  2  1  3
 7 10 11  9 12  7  7  7  7  3  1  2  4
 8 12  9 11 10  8  8  8  8  2  4  3  1
 9  5  8  7  6  1  4  3  2  9  9  9  9
10  7  6  5  8  3  2  1  4 10 10 10 10
11  6  7  8  5  4  1  2  3 11 11 11 11
12  8  5  6  7  2  3  4  1 12 12 12 12
";

const CASE3: &str = r"
    1  2  3  4  5  6  7  8  9 10 11 12
 1  1  3  1  3  9  9 11 11  6  7  7  6
 2  4  2  4  2 10 10 12 12  7  6  6  7
 3  3  1  3  1 12 12 10 10  5  8  8  5
 4  2  4  2  4 11 11  9  9  8  5  5  8
 5 12 11 12 11  5  5  6  6  3  4  4  3
 6  9 10  9 10  6  6  5  5  1  2  2  1
 7 11 12 11 12  8  8  7  7  2  1  1  2
 8 10  9 10  9  7  7  8  8  4  3  3  4
 9  6  8  6  8  1  1  4  4  9 12 12  9
10  8  6  8  6  2  2  3  3 11 10 10 11
11  7  5  7  5  4  4  1  1 10 11 11 10
12  5  7  5  7  3  3  2  2 12  9  9 12
";

const CASE4: &str = r"
    1  2  3  4  5  6  7  8  9 10 11 12
 1  1  3  1  3  9 12 11 10  5  8  7  6
 2  4  2  4  2 11 10 12  9  8  6  5  7
 3  3  1  3  1 12  9 10 11  6  7  8  5
 4  2  4  2  4 10 11  9 12  7  5  6  8
 5  9 11 12 10  5  5  6  6  1  4  2  3
 6 12 10  9 11  6  6  5  5  3  2  4  1
 7 11 12 10  9  8  8  7  7  4  3  1  2
 8 10  9 11 12  7  7  8  8  2  1  3  4
 9  5  8  6  7  1  3  4  2  9 12 12  9
10  8  6  7  5  4  2  3  1 11 10 10 11
11  7  5  8  6  2  4  1  3 10 11 11 10
12  6  7  5  8  3  1  2  4 12  9  9 12
";

const CASE5: &str = r"
    1  2  3  4  5  6  7  8  9 10 11 12
 1  1  1  1  1 12 10 11  9  5  7  6  8
 2  2  2  2  2 10 12  9 11  6  8  5  7
 3  3  3  3  3 11  9 12 10  7  5  8  6
 4  4  4  4  4  9 11 10 12  8  6  7  5
 5  9 11 10 12  5  5  5  5  4  2  3  1
 6 11  9 12 10  6  6  6  6  3  1  4  2
 7 10 12  9 11  7  7  7  7  2  4  1  3
 8 12 10 11  9  8  8  8  8  1  3  2  4
 9  8  7  6  5  1  2  3  4  9  9  9  9
10  6  5  8  7  3  4  1  2 10 10 10 10
11  7  8  5  6  2  1  4  3 11 11 11 11
12  5  6  7  8  4  3  2  1 12 12 12 12
";

const CASE6: &str = r"
    1  2  3  4  5  6  7  8  9 10 11 12
 1  1  3  1  3 10  9 10  9  5  6  6  5
 2  4  2  4  2  9 10  9 10  8  7  7  8
 3  3  1  3  1 11 12 11 12  7  8  8  7
 4  2  4  2  4 12 11 12 11  6  5  5  6
 5  9 11  9 11  5  7  5  7  2  3  3  2
 6 10 12 10 12  8  6  8  6  3  2  2  3
 7 12 10 12 10  7  5  7  5  4  1  1  4
 8 11  9 11  9  6  8  6  8  1  4  4  1
 9  6  7  6  7  3  4  3  4  9 12 12  9
10  5  8  5  8  4  3  4  3 11 10 10 11
11  7  6  7  6  2  1  2  1 10 11 11 10
12  8  5  8  5  1  2  1  2 12  9  9 12
";

const CASE7: &str = r"
    1  2  3  4  5  6  7  8  9 10 11 12
 1  1  1  2  2  9 10 11 12  8  7  6  5
 2  2  2  1  1 12 11 10  9  5  6  7  8
 3  4  4  3  3 10 12  9 11  6  8  5  7
 4  3  3  4  4 11  9 12 10  7  5  8  6
 5 12  9 11 10  5  8  8  5  1  3  4  2
 6 11 10  9 12  7  6  6  7  4  1  2  3
 7 10 11 12  9  6  7  7  6  3  2  1  4
 8  9 12 10 11  8  5  5  8  2  4  3  1
 9  5  8  7  6  2  3  4  1  9 12 12  9
10  6  7  5  8  4  2  1  3 11 10 10 11
11  7  6  8  5  3  1  2  4 10 11 11 10
12  8  5  6  7  1  4  3  2 12  9  9 12
";

const CASE8: &str = r"
    1  2  3  4  5  6  7  8  9 10 11 12
 1  1  4  2  3  9 12 10 11  8  5  7  6
 2  3  2  4  1 10 11  9 12  7  6  8  5
 3  4  1  3  2 11 10 12  9  6  7  5  8
 4  2  3  1  4 12  9 11 10  5  8  6  7
 5 10 12 11  9  5  8  6  7  1  2  3  4
 6 12 10  9 11  7  6  8  5  4  3  2  1
 7 11  9 10 12  8  5  7  6  2  1  4  3
 8  9 11 12 10  6  7  5  8  3  4  1  2
 9  5  7  8  6  4  3  2  1  9 12 10 11
10  7  5  6  8  1  2  3  4 11 10 12  9
11  8  6  5  7  3  4  1  2 12  9 11 10
12  6  8  7  5  2  1  4  3 10 11  9 12
";

const CASE9: &str = r"
    1  2  3  4  5  6  7  8  9 10 11 12
 1  1  3  1  3 12 10  9 11  8  7  5  6
 2  4  2  4  2 10  9 11 12  7  6  8  5
 3  3  1  3  1  9 11 12 10  6  5  7  8
 4  2  4  2  4 11 12 10  9  5  8  6  7
 5 11 12 10  9  5  7  5  7  3  2  4  1
 6 12 10  9 11  8  6  8  6  2  1  3  4
 7 10  9 11 12  7  5  7  5  1  4  2  3
 8  9 11 12 10  6  8  6  8  4  3  1  2
 9  7  6  5  8  4  3  2  1  9 12 12  9
10  6  5  8  7  3  2  1  4 11 10 10 11
11  8  7  6  5  1  4  3  2 10 11 11 10
12  5  8  7  6  2  1  4  3 12  9  9 12
";


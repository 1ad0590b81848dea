//! Helpers shared by integration tests.

use std::collections::BTreeMap;

use itertools::Itertools;
use splitgen::conditions::ConditionMultiset;

/// Every content with at most `max_n` factors and total grade at most
/// `max_grade`.
pub fn contents(max_n: usize, max_grade: u32) -> Vec<ConditionMultiset> {
    fn rec(
        grade: u32,
        max_grade: u32,
        left_n: usize,
        left_w: u32,
        cur: &mut BTreeMap<u32, usize>,
        out: &mut Vec<ConditionMultiset>,
    ) {
        if grade > max_grade {
            if !cur.is_empty() {
                out.push(ConditionMultiset::new(cur.clone()));
            }
            return;
        }
        let mut c = 0;
        loop {
            if c > 0 {
                cur.insert(grade, c);
            }
            rec(grade + 1, max_grade, left_n - c, left_w - c as u32 * grade, cur, out);
            c += 1;
            if c > left_n || c as u32 * grade > left_w {
                break;
            }
        }
        cur.remove(&grade);
    }
    let mut out = Vec::new();
    rec(1, max_grade, max_n, max_grade, &mut BTreeMap::new(), &mut out);
    out
}

pub fn orderings(content: &ConditionMultiset) -> Vec<Vec<u32>> {
    let base: Vec<u32> = content
        .content()
        .iter()
        .flat_map(|(&g, &c)| std::iter::repeat_n(g, c))
        .collect();
    base.into_iter()
        .permutations(content.len())
        .sorted()
        .dedup()
        .collect()
}

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Conflict graph of a Carter timetabling instance.
#[derive(Debug, Clone)]
pub struct ExamGraph {
    pub graph: Graph,
    /// Original exam identifier of each vertex.
    pub exams: Vec<u64>,
}

/// Builds the exam conflict graph from a per-student (`.stu`) file: each
/// line lists the exams one student sits, and every two exams sharing a
/// student are joined. Exam ids are sorted and renumbered densely.
pub fn convert_carter(text: &str) -> Result<ExamGraph> {
    let mut students: Vec<Vec<u64>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let mut exams = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>()
                    .map_err(|_| Error::parse(idx + 1, format!("non-integer exam id `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if exams.is_empty() {
            continue;
        }
        exams.sort_unstable();
        exams.dedup();
        students.push(exams);
    }
    if students.is_empty() {
        return Err(Error::parse(1, "empty student file"));
    }

    let ids: Vec<u64> = students.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let index = |id: u64| ids.binary_search(&id).expect("collected above");
    let mut edges = Vec::new();
    for exams in &students {
        for (a, &x) in exams.iter().enumerate() {
            for &y in &exams[a + 1..] {
                edges.push((index(x), index(y)));
            }
        }
    }
    Ok(ExamGraph {
        graph: Graph::from_edges(ids.len(), edges)?,
        exams: ids,
    })
}

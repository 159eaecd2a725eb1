//! Embeds sequences as rows of a dissimilarity matrix against a small
//! representation set and prints the matrix as CSV.
//!
//!     cargo run --example embed_dissimilarity

use odse::embedding::{compute_matrix, embed_one, pairwise_matrix, RepresentationSet};
use odse::seqcore::{build_cost_model, Sequence, SimilarityMatrix};

fn main() -> odse::Result<()> {
    let cm = build_cost_model(&SimilarityMatrix::pam120(), 1.0)?;
    let data: Vec<Sequence> = [
        ("a1", "MKTAYIAKQRQISFVKSHFSRQ"),
        ("a2", "MKTAYIAKQRQISFVKAHFSRQ"),
        ("a3", "MKSAYIAKQRQLSFVKSHFSRQ"),
        ("b1", "MDELLKRWEEGNPLLGDDPRTS"),
        ("b2", "MDELIKRWEEGNPLLGEDPRTS"),
        ("b3", "MDEVLKRWEDGNPLLGDDPKTS"),
    ]
    .into_iter()
    .map(|(id, s)| Sequence::new(id, s))
    .collect();

    let r = RepresentationSet::new(vec![data[0].clone(), data[3].clone()])?;
    let d = compute_matrix(&data, &r, &cm)?;
    println!("embedding against {:?}:", r.ids());
    d.write_csv(std::io::stdout())?;

    let query = Sequence::new("q", "MKTAYIAKQRQISFVKSHFSRE");
    println!("\nquery row: {:?}", embed_one(&query, &r, &cm)?);

    // Against the whole set: the full symmetric matrix.
    let full = pairwise_matrix(&data, &cm)?;
    println!("\nall pairs:");
    full.write_csv(std::io::stdout())?;
    Ok(())
}

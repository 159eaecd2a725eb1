//! Weighted Levenshtein distances under PAM120-derived costs.
//!
//!     cargo run --example align_sequences

use odse::seqcore::{build_cost_model, levenshtein, Normalization, Sequence, SimilarityMatrix};

fn main() -> odse::Result<()> {
    let pam = SimilarityMatrix::pam120();
    let cm = build_cost_model(&pam, 1.0)?;
    println!("gap cost {:.4}", cm.gap_cost());
    for (a, b) in [(b'I', b'L'), (b'I', b'V'), (b'W', b'G'), (b'A', b'A')] {
        println!(
            "c({}, {}) = {:.4}",
            a as char,
            b as char,
            cm.substitution_cost(a, b).expect("in alphabet")
        );
    }

    let seqs = [
        Sequence::new("ubiquitin", "MQIFVKTLTGKTITLEVEPSDTIENVKAKIQDKEGIPPDQQRLIFAGKQLEDGRTLSDYNIQKESTLHLVLRLRGG"),
        Sequence::new("nedd8", "MLIKVKTLTGKEIEIDIEPTDKVERIKERVEEKEGIPPQQQRLIYSGKQMNDEKTAADYKILGGSVLHLVLALRGG"),
        Sequence::new("sumo1", "MSDQEAKPSTEDLGDKKEGEYIKLKVIGQDSSEIHFKVKMTTHLKKLKESYCQRQGVPMNSLRFLFEGQRIADNHTPKELGMEEEDVIEVYQEQTGG"),
    ];
    let normalized = cm.clone().with_normalization(Normalization::ByMaxLength);
    println!("\n{:<10} {:<10} {:>10} {:>12}", "", "", "raw", "per residue");
    for i in 0..seqs.len() {
        for j in i + 1..seqs.len() {
            println!(
                "{:<10} {:<10} {:>10.3} {:>12.4}",
                seqs[i].id(),
                seqs[j].id(),
                levenshtein(&seqs[i], &seqs[j], &cm)?,
                levenshtein(&seqs[i], &seqs[j], &normalized)?
            );
        }
    }

    // A heavier gap makes indels less attractive than substitutions.
    let heavy = build_cost_model(&pam, 3.0)?;
    println!(
        "\nubiquitin vs sumo1 with gap weight 3: {:.3}",
        levenshtein(&seqs[0], &seqs[2], &heavy)?
    );
    Ok(())
}

// Regenerates the synthetic datasets committed under data/.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "rsom/io.hpp"
#include "support/synthetic.hpp"

int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "data";
    std::filesystem::create_directories(dir);

    rsom::SimpleGraph graph = rsom::synthetic::make_copurchase_graph();
    {
        std::ofstream out(dir / "polbooks_like.edges", std::ios::binary);
        for (auto [u, v] : graph.edges) out << u << ' ' << v << '\n';
    }
    {
        std::ofstream out(dir / "polbooks_like_labels.csv", std::ios::binary);
        out << "node_id,label\n";
        for (int v = 0; v < graph.num_nodes; ++v) out << v << ',' << graph.labels[v] << '\n';
    }
    std::cout << "graph: " << graph.num_nodes << " nodes, " << graph.edges.size() << " edges\n";

    rsom::DnaSequenceSet seqs = rsom::synthetic::make_clustered_sequences(3, 20, 300);
    rsom::write_fasta(dir / "demo_sequences.fasta", seqs);
    std::cout << "sequences: " << seqs.size() << " of length " << seqs.length() << "\n";
    return 0;
}

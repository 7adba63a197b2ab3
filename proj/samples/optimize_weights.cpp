// Run the full before/after comparison on one dataset and seed, printing the
// optimized feature weights and the convergence trace.
//
//   ./sample_optimize data/albrecht.csv 3

#include <faabe/faabe.hpp>

#include <cstdint>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    const std::string csv = argc > 1 ? argv[1] : "data/albrecht.csv";
    const std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 3;

    try {
        faabe::run_config cfg;
        cfg.dataset = csv;
        const auto paths = faabe::resolve_dataset(cfg);
        const faabe::dataset d = faabe::load_csv(paths.csv, paths.manifest);

        const faabe::run_pair_result r = faabe::run_pair(d, cfg, seed);

        std::cout << "dataset " << d.name << ", seed " << seed << "\n\nkept features:";
        for (const auto& name : r.selection.kept) std::cout << ' ' << name;
        std::cout << "\n\noptimized weights:\n";
        for (std::size_t i = 0; i < r.selection.kept.size(); ++i)
            std::cout << "  " << r.selection.kept[i] << " = "
                      << r.faabe.weights[i] << '\n';

        std::cout << "\ntraining fitness: " << r.abe.train_fitness << " -> "
                  << r.faabe.train_fitness << '\n';
        std::cout << "test MMRE:        " << r.abe.row.metrics.mmre << " -> "
                  << r.faabe.row.metrics.mmre << '\n';

        std::cout << "\nconvergence (every 10th iteration):\n";
        for (std::size_t t = 0; t < r.faabe.trace.size(); t += 10)
            std::cout << "  iter " << t << ": " << r.faabe.trace[t] << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

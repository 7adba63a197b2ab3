// Estimate the effort of a single held-out project by analogy.
//
//   ./sample_estimate data/kemerer.csv
//
// Loads a dataset, holds out its last project, and estimates that project's
// effort from the remaining ones with default settings (k = 3, euclidean
// similarity, inverse weighted mean).

#include <faabe/faabe.hpp>

#include <iostream>

int main(int argc, char** argv) {
    const std::string csv = argc > 1 ? argv[1] : "data/kemerer.csv";
    const std::string manifest = csv.substr(0, csv.size() - 4) + ".manifest";

    try {
        const faabe::dataset raw = faabe::load_csv(csv, manifest);
        const faabe::dataset d = faabe::normalize(raw);

        std::vector<faabe::project> history(d.projects.begin(),
                                            d.projects.end() - 1);
        const faabe::project target = d.projects.back();

        std::vector<double> efforts;
        for (const auto& p : history) efforts.push_back(p.effort);
        std::vector<faabe::feature_kind> kinds;
        for (const auto& f : d.schema.features) kinds.push_back(f.kind);
        const faabe::weight_vector weights(d.schema.k(), 1.0);

        const faabe::abe_config cfg;
        const auto analogies =
            faabe::retrieve_analogies(target, history, kinds, weights, cfg);
        const double predicted = faabe::solve(analogies, efforts, cfg.solution);

        std::cout << "dataset:   " << d.name << " (" << history.size()
                  << " historical projects)\n";
        std::cout << "analogies:";
        for (const auto& a : analogies)
            std::cout << "  #" << a.index << " (sim " << a.sim << ", effort "
                      << efforts[a.index] << ")";
        std::cout << "\npredicted: " << predicted << "\n";
        std::cout << "actual:    " << target.effort << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

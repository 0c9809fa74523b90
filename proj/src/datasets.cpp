#include "trialbandit/datasets.hpp"

namespace trialbandit {
namespace {

using Rows = std::vector<std::vector<double>>;

Rows repeat_row(const std::vector<double>& row, std::size_t times) { return Rows(times, row); }

DatasetSpec ds1() {
    return make_dataset("DS1", {.25, .25, .25, .25}, {{1, 4}, {2, 2}, {4, 1}, {2, 2}},
                        {{1000, 1000}, {100, 100}, {100, 100}, {100, 100}});
}

DatasetSpec ds2() {
    return make_dataset("DS2", {.1, .3, .3, .3}, {{1, 4}, {2, 2}, {4, 1}, {2, 2}},
                        {{1000, 1000}, {100, 100}, {100, 100}, {100, 100}});
}

// Rows 3-7 of the variance column are elided in the source table; the printed
// rows 5, 10, ..., 640 pin a doubling sequence.
DatasetSpec ds3() {
    Rows sigma2;
    for (double v = 5.0; v <= 640.0; v *= 2.0) sigma2.push_back({v, v});
    return make_dataset("DS3", std::vector<double>(8, .125), repeat_row({2, 2}, 8), sigma2);
}

DatasetSpec ds4() {
    return make_dataset("DS4", {.25, .25, .25, .25}, {{1, 4}, {2, 2}, {4, 1}, {2, 2}},
                        {{100, 1000}, {100, 100}, {100, 1000}, {100, 100}});
}

const Rows kCbaspMeans{{10.9, 16.2}, {9.3, 19.4}, {12.9, 15.8}};
const Rows kCbaspVariances{{99.3, 79.7}, {110.7, 55.9}, {103.5, 78.6}};

DatasetSpec ds_cbasp() {
    return make_dataset("DS-CBASP", {1.0 / 3, 1.0 / 3, 1.0 / 3}, kCbaspMeans, kCbaspVariances);
}

DatasetSpec ds21() {
    return make_dataset("DS21", std::vector<double>(4, .25), repeat_row({20, 10, 10}, 4),
                        repeat_row({50, 50, 50}, 4));
}

DatasetSpec ds22() {
    return make_dataset("DS22", std::vector<double>(4, .25),
                        {{20, 19, 15}, {20, 10, 10}, {20, 10, 10}, {20, 10, 10}},
                        repeat_row({50, 50, 50}, 4));
}

// The source table lists four probabilities for five subpopulations; the
// missing one completes "subpopulations 1 and 2 are rare".
DatasetSpec ds23() {
    return make_dataset("DS23", {.05, .05, .3, .3, .3}, repeat_row({20, 15, 15}, 5),
                        repeat_row({50, 50, 50}, 5));
}

DatasetSpec ds24() {
    Rows mu = repeat_row({20, 10, 10}, 8);
    mu[0] = {20, 15, 15};
    return make_dataset("DS24", std::vector<double>(8, .125), mu, repeat_row({50, 50, 50}, 8));
}

DatasetSpec ds2_cbasp() {
    return make_dataset("DS2-CBASP", {.2, .4, .4}, kCbaspMeans, kCbaspVariances);
}

}  // namespace

const std::vector<std::string>& builtin_dataset_names() {
    static const std::vector<std::string> names{"DS1",  "DS2",  "DS3",  "DS4",  "DS-CBASP",
                                                "DS21", "DS22", "DS23", "DS24", "DS2-CBASP"};
    return names;
}

DatasetSpec builtin_dataset(std::string_view name) {
    if (name == "DS1") return ds1();
    if (name == "DS2") return ds2();
    if (name == "DS3") return ds3();
    if (name == "DS4") return ds4();
    if (name == "DS-CBASP") return ds_cbasp();
    if (name == "DS21") return ds21();
    if (name == "DS22") return ds22();
    if (name == "DS23") return ds23();
    if (name == "DS24") return ds24();
    if (name == "DS2-CBASP") return ds2_cbasp();

    std::string valid;
    for (const auto& n : builtin_dataset_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw UnknownDataset("unknown dataset '" + std::string(name) + "' (valid: " + valid + ")");
}

std::uint64_t default_budget(std::string_view name) {
    if (name == "DS24") return 250;
    if (name == "DS2-CBASP") return 700;
    return 200;
}

}  // namespace trialbandit

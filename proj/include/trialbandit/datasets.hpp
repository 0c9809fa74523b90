#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "trialbandit/trial_model.hpp"

namespace trialbandit {

class UnknownDataset : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Registry names in table order: DS1, DS2, DS3, DS4, DS-CBASP, DS21, DS22,
/// DS23, DS24, DS2-CBASP.
const std::vector<std::string>& builtin_dataset_names();

/// Throws UnknownDataset (message lists the valid names) for anything else.
DatasetSpec builtin_dataset(std::string_view name);

/// Maximum budget used for the dataset in the reference experiments:
/// 250 for DS24, 700 for DS2-CBASP, 200 otherwise.
std::uint64_t default_budget(std::string_view name);

}  // namespace trialbandit

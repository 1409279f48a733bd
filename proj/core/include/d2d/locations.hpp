#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace d2d {

struct LocationRecord {
    std::int64_t id = 0;
    double x = 0.0;
    double y = 0.0;
    int floor = 0;
};

// CSV with header "id,x,y,floor". Records keep file order; ids must be
// unique. Coordinates are meters.
std::vector<LocationRecord> load_locations(const std::string& path);
std::vector<LocationRecord> locations_from_string(const std::string& text);

void save_locations(const std::string& path, const std::vector<LocationRecord>& locs);
std::string locations_to_string(const std::vector<LocationRecord>& locs);

}  // namespace d2d

#include "wfront/data.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "wfront/io_util.hpp"

namespace wfront::data {

std::pair<double, double> summarize(const std::vector<DatedSample>& samples) {
    if (samples.empty()) throw std::invalid_argument("summarize: no samples");
    double wsum = 0.0, twsum = 0.0;
    for (const auto& s : samples) {
        if (s.sigma <= 0.0) throw std::invalid_argument("summarize: sigma must be positive");
        const double w = 1.0 / (s.sigma * s.sigma);
        wsum += w;
        twsum += s.t_bc * w;
    }
    return {twsum / wsum, std::sqrt(1.0 / wsum)};
}

std::vector<SiteRecord> load_sites(const std::string& path, double sigma_floor) {
    std::istringstream in(io::read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty sites file");

    std::vector<SiteRecord> records;
    std::map<std::string, std::size_t> index;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = io::split_csv(line);
        const std::string ctx = path + ":" + std::to_string(lineno);
        if (fields.size() != 6)
            throw std::runtime_error(ctx + ": expected site_id,name,lon,lat,t_bc,sigma");
        const geo::GeoPoint loc{io::parse_double(fields[2], ctx), io::parse_double(fields[3], ctx)};
        DatedSample sample{io::parse_double(fields[4], ctx), io::parse_double(fields[5], ctx)};
        if (sample.sigma <= 0.0) throw std::runtime_error(ctx + ": sigma must be positive");
        if (sigma_floor > 0.0) sample.sigma = std::max(sample.sigma, sigma_floor);

        auto it = index.find(fields[0]);
        if (it == index.end()) {
            index.emplace(fields[0], records.size());
            SiteRecord rec;
            rec.site_id = fields[0];
            rec.name = fields[1];
            rec.loc = loc;
            rec.samples.push_back(sample);
            records.push_back(std::move(rec));
        } else {
            SiteRecord& rec = records[it->second];
            if (std::fabs(rec.loc.lon - loc.lon) > 1e-9 || std::fabs(rec.loc.lat - loc.lat) > 1e-9)
                throw std::runtime_error(ctx + ": location differs from earlier rows of site '" +
                                         fields[0] + "'");
            rec.samples.push_back(sample);
        }
    }
    if (records.empty()) throw std::runtime_error(path + ": no data rows");
    for (auto& rec : records) {
        const auto [t, s] = summarize(rec.samples);
        rec.t_summary = t;
        rec.sigma_summary = s;
        rec.m = static_cast<int>(rec.samples.size());
    }
    return records;
}

}  // namespace wfront::data

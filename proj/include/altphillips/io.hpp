#ifndef ALTPHILLIPS_IO_HPP
#define ALTPHILLIPS_IO_HPP

/// \file io.hpp
/// \brief CSV profile serialization and versioned output paths.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "common.hpp"

namespace altphillips {

/// A sampled trace profile theta -> (u, du).
struct Profile {
    int d = 0;
    double kappa = 0.0;
    std::vector<double> theta, u, du;
};

/// Serializes a profile as CSV with a self-describing header line.
inline std::string profile_to_csv(const Profile& p)
{
    std::ostringstream os;
    os << "# alt-phillips-profile v1 d=" << p.d << " kappa=" << format_g17(p.kappa) << "\n";
    os << "theta,u,du\n";
    for (std::size_t i = 0; i < p.theta.size(); ++i)
        os << format_g17(p.theta[i]) << "," << format_g17(p.u[i]) << ","
           << format_g17(p.du[i]) << "\n";
    return os.str();
}

inline void save_profile(const std::filesystem::path& path, const Profile& p)
{
    std::ofstream os(path);
    if (!os) throw invalid_argument("save_profile: cannot open " + path.string());
    os << profile_to_csv(p);
}

inline Profile load_profile(const std::filesystem::path& path)
{
    std::ifstream is(path);
    if (!is) throw invalid_argument("load_profile: cannot open " + path.string());
    Profile p;
    std::string line;
    if (!std::getline(is, line) ||
        line.rfind("# alt-phillips-profile v1 ", 0) != 0)
        throw invalid_argument("load_profile: missing profile header in " + path.string());
    {
        std::istringstream hs(line.substr(26));
        std::string tok;
        while (hs >> tok) {
            if (tok.rfind("d=", 0) == 0) p.d = std::stoi(tok.substr(2));
            if (tok.rfind("kappa=", 0) == 0) p.kappa = std::stod(tok.substr(6));
        }
    }
    std::getline(is, line); // column names
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string a, b, c;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c))
            throw invalid_argument("load_profile: malformed row in " + path.string());
        p.theta.push_back(std::stod(a));
        p.u.push_back(std::stod(b));
        p.du.push_back(std::stod(c));
    }
    return p;
}

/// First unused versioned path <dir>/<stem>.<ext>, <dir>/<stem>-2.<ext>, ...
/// Existing files are never overwritten.
inline std::filesystem::path versioned_path(const std::filesystem::path& dir,
                                            const std::string& stem, const std::string& ext)
{
    for (int v = 1;; ++v) {
        std::filesystem::path p =
            dir / (v == 1 ? stem + "." + ext : stem + "-" + std::to_string(v) + "." + ext);
        if (!std::filesystem::exists(p)) return p;
    }
}

/// Output stem "<command>-<fnv1a of the canonical parameter string>".
inline std::string output_stem(const std::string& command, const std::string& canon)
{
    std::ostringstream os;
    os << command << "-" << std::hex << fnv1a(command + "|" + canon);
    return os.str();
}

inline std::filesystem::path write_text(const std::filesystem::path& dir,
                                        const std::string& stem, const std::string& ext,
                                        const std::string& body)
{
    std::filesystem::create_directories(dir);
    const auto path = versioned_path(dir, stem, ext);
    std::ofstream os(path);
    if (!os) throw invalid_argument("write_text: cannot open " + path.string());
    os << body;
    return path;
}

} // namespace altphillips

#endif // ALTPHILLIPS_IO_HPP

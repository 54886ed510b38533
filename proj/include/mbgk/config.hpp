#pragma once

#include <map>
#include <string>

namespace mbgk {

/// Flat key = value run configuration ('#' starts a comment). Keys are
/// validated against the documented set; values stay strings until queried.
class Config {
public:
    static Config fromFile(const std::string& path);
    static Config fromString(const std::string& text);

    void set(const std::string& key, const std::string& value);
    /// "key=value" form used by --override.
    void setOverride(const std::string& kv);

    bool has(const std::string& key) const;
    std::string getS(const std::string& key, const std::string& dflt = "") const;
    double getD(const std::string& key, double dflt) const;
    int getI(const std::string& key, int dflt) const;
    bool getB(const std::string& key, bool dflt) const;

    /// Canonical "key = value" listing (sorted); doubles as the cache key.
    std::string fingerprint() const;

    const std::map<std::string, std::string>& items() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

}  // namespace mbgk

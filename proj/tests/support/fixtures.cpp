// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include "provstamp/integrity.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace fs = std::filesystem;

namespace fixture {

using namespace provstamp;

ProvenanceRecord dogs_in_park()
{
    GenerationParams g;
    g.generatorVersion = "flux1.schnell";
    g.prompt = "A photo taken with a Nikon Z9 of two dogs playing in a vibrant dog park on a "
               "sunny afternoon.";
    g.seed = "140716430322376";
    g.steps = 4;
    g.sampler = "euler_ancestral";
    g.width = 1024;
    g.height = 1024;

    Origin o;
    o.name = "image_of_person";
    o.creator = Agent::person("Author 1");
    o.methodOfCollection = "flux";
    o.dateCreated = "2025-03-02T09:31:00Z";
    o.encodingFormat = "image/png";
    o.fidelity = Fidelity::synthetic;
    o.generation = g;
    o.requirements = {
        {"The object detector shall detect a \"Dog\" class when the class is in a park setting",
         std::nullopt},
        {"The object detector shall detect a \"Dog\" class when there are 2 instances of the "
         "class in the image",
         std::nullopt}};
    Annotation dog;
    dog.className = "Dog";
    dog.bbox = std::string("[x1, y1, x2, y2]");
    o.annotations = {dog, dog};
    return new_record(o);
}

std::string source_text(const std::string& relative)
{
    std::ifstream in(fs::path(PROVSTAMP_SOURCE_DIR) / relative, std::ios::binary);
    if (!in)
        throw std::runtime_error("missing test file " + relative);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TempDir::TempDir()
{
    std::string tmpl = (fs::temp_directory_path() / "provstamp-test-XXXXXX").string();
    if (!mkdtemp(tmpl.data()))
        throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
}

TempDir::~TempDir()
{
    std::error_code ec;
    fs::remove_all(path_, ec);
}

void write_bytes(const fs::path& path, const Bytes& data)
{
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
}

void write_corpus(const fs::path& root, std::mt19937_64& rng, const CorpusOptions& options)
{
    static const char* dirs[] = {"", "a/", "a/b/", "c/"};
    for (std::size_t i = 0; i < options.images; ++i) {
        bool jpeg = rng() % 3 == 0;
        Bytes image = jpeg ? oracle::make_jpeg(rng, rng() % 2 == 0)
                           : oracle::make_png(rng, {static_cast<std::uint32_t>(1 + rng() % 4), 1, 1, false});
        std::string ext = jpeg ? (rng() % 2 ? ".jpg" : ".JPEG") : (rng() % 5 ? ".png" : ".PNG");
        char name[32];
        std::snprintf(name, sizeof name, "img%04zu", i);
        auto path = root / (std::string(dirs[rng() % 4]) + name + ext);
        if (std::bernoulli_distribution(options.unprovenanced)(rng)) {
            write_bytes(path, image);
            continue;
        }
        write_bytes(path, seal(image, gen::record(rng)));
    }
    // Files the scanner must ignore.
    write_bytes(root / "notes.txt", Bytes{'h', 'i'});
    write_bytes(root / "a" / "thumb.gif", Bytes{'G', 'I', 'F'});
}

}  // namespace fixture

#ifndef CHADKG_RESOURCES_HPP
#define CHADKG_RESOURCES_HPP

// Data files compiled into the library at build time (see core/data/ and
// cmake/embed_file.cmake).

namespace chadkg::resources {

extern const char* const kCatalogueCsv;
extern const char* const kDefaultShapes;
extern const char* const kSearchJs;
extern const char* const kStyleCss;

}  // namespace chadkg::resources

#endif

#include "geo.hpp"

namespace trendmine::geo {

// Representative anchor per state plus DC; 2012 electoral votes.
std::vector<StatePoint> default_states() {
  return {
      {"AK", 61.370716, -152.404419, 3},
      {"AL", 32.806671, -86.79113, 9},
      {"AR", 34.969704, -92.373123, 6},
      {"AZ", 33.729759, -111.431221, 11},
      {"CA", 36.116203, -119.681564, 55},
      {"CO", 39.059811, -105.311104, 9},
      {"CT", 41.597782, -72.755371, 7},
      {"DC", 38.897438, -77.026817, 3},
      {"DE", 39.318523, -75.507141, 3},
      {"FL", 27.766279, -81.686783, 29},
      {"GA", 33.040619, -83.643074, 16},
      {"HI", 21.094318, -157.498337, 4},
      {"IA", 42.011539, -93.210526, 6},
      {"ID", 44.240459, -114.478828, 4},
      {"IL", 40.349457, -88.986137, 20},
      {"IN", 39.849426, -86.258278, 11},
      {"KS", 38.5266, -96.726486, 6},
      {"KY", 37.66814, -84.670067, 8},
      {"LA", 31.169546, -91.867805, 8},
      {"MA", 42.230171, -71.530106, 11},
      {"MD", 39.063946, -76.802101, 10},
      {"ME", 44.693947, -69.381927, 4},
      {"MI", 43.326618, -84.536095, 16},
      {"MN", 45.694454, -93.900192, 10},
      {"MO", 38.456085, -92.288368, 10},
      {"MS", 32.741646, -89.678696, 6},
      {"MT", 46.921925, -110.454353, 3},
      {"NC", 35.630066, -79.806419, 15},
      {"ND", 47.528912, -99.784012, 3},
      {"NE", 41.12537, -98.268082, 5},
      {"NH", 43.452492, -71.563896, 4},
      {"NJ", 40.298904, -74.521011, 14},
      {"NM", 34.840515, -106.248482, 5},
      {"NV", 38.313515, -117.055374, 6},
      {"NY", 42.165726, -74.948051, 29},
      {"OH", 40.388783, -82.764915, 18},
      {"OK", 35.565342, -96.928917, 7},
      {"OR", 44.572021, -122.070938, 7},
      {"PA", 40.590752, -77.209755, 20},
      {"RI", 41.680893, -71.51178, 4},
      {"SC", 33.856892, -80.945007, 9},
      {"SD", 44.299782, -99.438828, 3},
      {"TN", 35.747845, -86.692345, 11},
      {"TX", 31.054487, -97.563461, 38},
      {"UT", 40.150032, -111.862434, 6},
      {"VA", 37.769337, -78.169968, 13},
      {"VT", 44.045876, -72.710686, 3},
      {"WA", 47.400902, -121.490494, 12},
      {"WI", 44.268543, -89.616508, 10},
      {"WV", 38.491226, -80.954453, 5},
      {"WY", 42.755966, -107.30249, 3},
  };
}

// 2012 outcome: A = Obama, B = Romney.
std::map<std::string, Winner> results_2012() {
  return {
      {"AK", Winner::B},
      {"AL", Winner::B},
      {"AR", Winner::B},
      {"AZ", Winner::B},
      {"CA", Winner::A},
      {"CO", Winner::A},
      {"CT", Winner::A},
      {"DC", Winner::A},
      {"DE", Winner::A},
      {"FL", Winner::A},
      {"GA", Winner::B},
      {"HI", Winner::A},
      {"IA", Winner::A},
      {"ID", Winner::B},
      {"IL", Winner::A},
      {"IN", Winner::B},
      {"KS", Winner::B},
      {"KY", Winner::B},
      {"LA", Winner::B},
      {"MA", Winner::A},
      {"MD", Winner::A},
      {"ME", Winner::A},
      {"MI", Winner::A},
      {"MN", Winner::A},
      {"MO", Winner::B},
      {"MS", Winner::B},
      {"MT", Winner::B},
      {"NC", Winner::B},
      {"ND", Winner::B},
      {"NE", Winner::B},
      {"NH", Winner::A},
      {"NJ", Winner::A},
      {"NM", Winner::A},
      {"NV", Winner::A},
      {"NY", Winner::A},
      {"OH", Winner::A},
      {"OK", Winner::B},
      {"OR", Winner::A},
      {"PA", Winner::A},
      {"RI", Winner::A},
      {"SC", Winner::B},
      {"SD", Winner::B},
      {"TN", Winner::B},
      {"TX", Winner::B},
      {"UT", Winner::B},
      {"VA", Winner::A},
      {"VT", Winner::A},
      {"WA", Winner::A},
      {"WI", Winner::A},
      {"WV", Winner::B},
      {"WY", Winner::B},
  };
}

}  // namespace trendmine::geo

// Generated by tools/johansen_table_gen --reps 100000 --steps 1000 --max-dims 6 --seed 20240101
// Quantiles 1%..99% of the restricted-constant Johansen trace distribution.

#include <array>

namespace varflow::detail {

extern const int kJohansenMaxDims = 6;
extern const std::array<std::array<double, 99>, 6> kJohansenTraceQuantiles{{
    {{0.5956, 0.7369, 0.8439, 0.9334, 1.0119, 1.0849, 1.1533, 1.2205,
      1.2852, 1.3454, 1.4046, 1.4628, 1.5159, 1.5687, 1.6223, 1.6752,
      1.7299, 1.7837, 1.8360, 1.8855, 1.9348, 1.9849, 2.0338, 2.0829,
      2.1339, 2.1838, 2.2336, 2.2829, 2.3330, 2.3803, 2.4283, 2.4798,
      2.5301, 2.5794, 2.6325, 2.6810, 2.7337, 2.7857, 2.8371, 2.8870,
      2.9400, 2.9927, 3.0436, 3.0985, 3.1525, 3.2069, 3.2642, 3.3205,
      3.3795, 3.4381, 3.4991, 3.5598, 3.6222, 3.6838, 3.7441, 3.8050,
      3.8681, 3.9331, 3.9996, 4.0651, 4.1371, 4.2099, 4.2811, 4.3556,
      4.4282, 4.5017, 4.5791, 4.6594, 4.7386, 4.8275, 4.9148, 5.0046,
      5.0958, 5.1894, 5.2877, 5.3952, 5.5002, 5.6079, 5.7154, 5.8323,
      5.9562, 6.0881, 6.2347, 6.3814, 6.5349, 6.7019, 6.8789, 7.0641,
      7.2774, 7.5044, 7.7510, 8.0242, 8.3343, 8.6634, 9.0814, 9.5920,
      10.2345, 11.1352, 12.7046}},
    {{4.4791, 5.0266, 5.3928, 5.6904, 5.9466, 6.1806, 6.3786, 6.5714,
      6.7437, 6.9093, 7.0627, 7.2086, 7.3482, 7.4897, 7.6272, 7.7623,
      7.8964, 8.0212, 8.1359, 8.2520, 8.3689, 8.4826, 8.5923, 8.7114,
      8.8230, 8.9291, 9.0385, 9.1425, 9.2453, 9.3532, 9.4522, 9.5527,
      9.6561, 9.7597, 9.8519, 9.9542, 10.0539, 10.1527, 10.2574, 10.3574,
      10.4534, 10.5583, 10.6599, 10.7608, 10.8620, 10.9629, 11.0609, 11.1694,
      11.2823, 11.3876, 11.4989, 11.5998, 11.7067, 11.8155, 11.9293, 12.0395,
      12.1606, 12.2788, 12.3905, 12.5128, 12.6323, 12.7552, 12.8756, 13.0027,
      13.1286, 13.2536, 13.3867, 13.5292, 13.6708, 13.8106, 13.9554, 14.1094,
      14.2654, 14.4095, 14.5671, 14.7277, 14.9005, 15.0783, 15.2581, 15.4535,
      15.6484, 15.8543, 16.0654, 16.2645, 16.4888, 16.7398, 16.9914, 17.2731,
      17.5848, 17.9196, 18.2943, 18.7058, 19.1389, 19.6917, 20.2600, 20.9606,
      21.8318, 22.9680, 24.9580}},
    {{12.3934, 13.4336, 14.0911, 14.5952, 15.0380, 15.4042, 15.7499, 16.0478,
      16.3459, 16.6086, 16.8490, 17.0707, 17.2920, 17.5188, 17.7243, 17.9229,
      18.1168, 18.2960, 18.4890, 18.6715, 18.8500, 19.0225, 19.1955, 19.3557,
      19.5223, 19.6849, 19.8558, 20.0132, 20.1752, 20.3389, 20.4864, 20.6391,
      20.7912, 20.9475, 21.1042, 21.2503, 21.3968, 21.5454, 21.6914, 21.8405,
      21.9952, 22.1443, 22.2963, 22.4478, 22.5905, 22.7448, 22.8922, 23.0434,
      23.2054, 23.3565, 23.5065, 23.6652, 23.8109, 23.9622, 24.1121, 24.2682,
      24.4266, 24.5791, 24.7474, 24.9107, 25.0705, 25.2375, 25.4124, 25.5822,
      25.7626, 25.9424, 26.1315, 26.3201, 26.5131, 26.6988, 26.8862, 27.0866,
      27.2830, 27.4937, 27.7106, 27.9391, 28.1653, 28.3886, 28.6264, 28.8737,
      29.1330, 29.4114, 29.6912, 29.9811, 30.2991, 30.6075, 30.9711, 31.3513,
      31.7518, 32.1947, 32.6687, 33.1798, 33.7323, 34.3798, 35.1003, 36.0057,
      37.1401, 38.7059, 41.1944}},
    {{24.2445, 25.6503, 26.5951, 27.3536, 27.9976, 28.5355, 29.0555, 29.4881,
      29.8615, 30.2134, 30.5431, 30.8558, 31.1791, 31.4791, 31.7748, 32.0518,
      32.3160, 32.5577, 32.8075, 33.0489, 33.2770, 33.5152, 33.7569, 33.9751,
      34.2066, 34.4350, 34.6500, 34.8633, 35.0761, 35.2977, 35.5054, 35.7057,
      35.9055, 36.1041, 36.3034, 36.5021, 36.7073, 36.9042, 37.1083, 37.3078,
      37.4989, 37.6923, 37.8862, 38.0720, 38.2640, 38.4605, 38.6613, 38.8627,
      39.0568, 39.2499, 39.4411, 39.6355, 39.8296, 40.0232, 40.2137, 40.4245,
      40.6272, 40.8334, 41.0439, 41.2609, 41.4861, 41.7120, 41.9273, 42.1419,
      42.3729, 42.5935, 42.8154, 43.0428, 43.2798, 43.5179, 43.7601, 44.0169,
      44.2694, 44.5332, 44.7969, 45.0688, 45.3585, 45.6434, 45.9270, 46.2447,
      46.5631, 46.8908, 47.2313, 47.6001, 47.9922, 48.3889, 48.8135, 49.2593,
      49.7484, 50.2742, 50.8309, 51.4793, 52.1840, 52.9421, 53.8863, 54.9764,
      56.3719, 58.2946, 61.2110}},
    {{39.9477, 42.0257, 43.2524, 44.1974, 45.0150, 45.6710, 46.2837, 46.8299,
      47.3291, 47.7910, 48.2479, 48.6634, 49.0759, 49.4405, 49.7980, 50.1473,
      50.4796, 50.8167, 51.1479, 51.4638, 51.7636, 52.0561, 52.3500, 52.6308,
      52.8934, 53.1697, 53.4356, 53.6936, 53.9511, 54.2145, 54.4744, 54.7117,
      54.9536, 55.1996, 55.4441, 55.6889, 55.9272, 56.1873, 56.4173, 56.6458,
      56.8801, 57.1169, 57.3586, 57.5977, 57.8386, 58.0731, 58.3017, 58.5416,
      58.7732, 59.0138, 59.2656, 59.5209, 59.7770, 60.0264, 60.2718, 60.5152,
      60.7682, 61.0414, 61.2940, 61.5505, 61.8189, 62.0885, 62.3487, 62.6200,
      62.9036, 63.1785, 63.4410, 63.7148, 64.0034, 64.3051, 64.5944, 64.8996,
      65.2091, 65.5256, 65.8479, 66.1998, 66.5251, 66.8831, 67.2419, 67.6188,
      68.0105, 68.3967, 68.8087, 69.2151, 69.6596, 70.1333, 70.6305, 71.1705,
      71.7452, 72.3505, 73.0157, 73.7643, 74.5386, 75.4376, 76.5185, 77.7955,
      79.3511, 81.3691, 84.5794}},
    {{59.7071, 62.1153, 63.6709, 64.8551, 65.8083, 66.6654, 67.4064, 68.0578,
      68.6666, 69.2636, 69.8078, 70.3401, 70.8059, 71.2577, 71.6863, 72.0762,
      72.5069, 72.9159, 73.2970, 73.6583, 74.0275, 74.3763, 74.7172, 75.0592,
      75.4017, 75.7432, 76.0620, 76.3769, 76.6922, 77.0051, 77.3007, 77.5814,
      77.8704, 78.1781, 78.4806, 78.7838, 79.0610, 79.3605, 79.6679, 79.9546,
      80.2407, 80.5206, 80.8194, 81.0989, 81.3835, 81.6581, 81.9651, 82.2600,
      82.5458, 82.8226, 83.0914, 83.3822, 83.6852, 83.9693, 84.2550, 84.5488,
      84.8240, 85.1163, 85.4284, 85.7146, 86.0092, 86.3121, 86.6377, 86.9568,
      87.2569, 87.5957, 87.8934, 88.2282, 88.5683, 88.9220, 89.2720, 89.6203,
      89.9853, 90.3380, 90.7301, 91.1082, 91.5282, 91.9290, 92.3605, 92.7807,
      93.2146, 93.6952, 94.1929, 94.7044, 95.2601, 95.8266, 96.4125, 97.0628,
      97.7470, 98.4750, 99.2026, 100.0627, 100.9768, 102.0408, 103.2409, 104.5699,
      106.3020, 108.7560, 112.8443}},
}};

}  // namespace varflow::detail

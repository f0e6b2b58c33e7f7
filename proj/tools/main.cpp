#include <iostream>

int main() { std::cout << "sheafcoh\n"; return 0; }

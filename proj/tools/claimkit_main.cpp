#include "claimkit/io.hpp"
int main(){return 0;}

package com.demo.ping;

import org.springframework.web.bind.annotation.PostMapping;
import org.springframework.web.bind.annotation.RestController;

@RestController
public class PingController {

    @PostMapping("/ping")
    public void ping() {
    }
}

package com.demo.status;

import org.springframework.context.annotation.Profile;
import org.springframework.web.bind.annotation.GetMapping;
import org.springframework.web.bind.annotation.RequestMapping;
import org.springframework.web.bind.annotation.RestController;

@Profile("internal")
@RestController
@RequestMapping("/status")
public class InternalStatusController {

    @GetMapping
    public InternalStatus current() {
        return new InternalStatus();
    }
}
